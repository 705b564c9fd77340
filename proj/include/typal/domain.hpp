#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "typal/ast.hpp"

namespace typal {

inline constexpr uint64_t kDefaultDomainCap = 1ull << 20;

/// True if t contains no Record/Union/Named nodes.
bool is_lowered_type(const TypeExpr& t);

/// Number of values of t, saturating at UINT64_MAX.
uint64_t dom_size(const TypeExpr& t);

/// Number of Boolean leaves in the representation of t, saturating.
/// Records count as their field tuple; unions as tag enum + all payloads.
uint64_t width_of(const TypeExpr& t);

/// All values of t in canonical order: integers ascending, enums in declared
/// order, tuples/arrays as cross products with the rightmost position cycling
/// fastest, sets as arrays of bool over the element domain.
/// Throws CapError when dom_size(t) exceeds cap. Requires a lowered type.
std::vector<Value> dom_values(const TypeExpr& t, uint64_t cap = kDefaultDomainCap);

/// Position of v in dom order. v must be canonical (sets sorted by rank).
uint64_t rank_of(const TypeExpr& t, const Value& v);

/// Inverse of rank_of.
Value value_at(const TypeExpr& t, uint64_t rank);

/// First domain value (rank 0) without enumerating.
Value first_value(const TypeExpr& t);

/// Validate a parsed literal against a (possibly unlowered) type and return
/// its normalized form: record fields reordered to declared order, set
/// elements sorted by rank and deduplicated. Throws TypeError.
Value check_literal(const TypeExpr& t, const Value& v, SourcePos pos = {});

/// Flatten a canonical value into its Boolean leaf assignment (lowered type).
std::vector<bool> encode_literal(const TypeExpr& t, const Value& v);

/// Rebuild the value from a leaf assignment; throws EvalError
/// (ExactlyOneViolation) naming the offending path when a one-hot group does
/// not have exactly one true bit.
Value decode_leaves(const TypeExpr& t, const std::vector<bool>& leaves,
                    const std::string& path = "value");

/// Exactly-one groups and free (independent) bits of the leaf space of t,
/// as offsets into the flattened representation.
struct SlotLayout {
  std::vector<std::vector<size_t>> groups;  // one-hot bit groups (Int/Enum slots)
  std::vector<size_t> free_bits;            // Bool leaves and set membership bits
};
SlotLayout slot_layout(const TypeExpr& t);

}  // namespace typal
