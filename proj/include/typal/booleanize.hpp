#pragma once

#include <map>
#include <string>
#include <vector>

#include "typal/ast.hpp"
#include "typal/domain.hpp"
#include "typal/formula.hpp"

namespace typal {

/// Representation of a typed value: a tree whose shape is determined by the
/// type and whose leaves are propositional formulas.
struct Repr {
  bool leaf = false;
  FormulaPtr f;            // when leaf
  std::vector<Repr> kids;  // when node

  static Repr leaf_of(FormulaPtr p) {
    Repr r;
    r.leaf = true;
    r.f = std::move(p);
    return r;
  }
  static Repr node(std::vector<Repr> kids) {
    Repr r;
    r.kids = std::move(kids);
    return r;
  }
};

/// Leaves in depth-first order.
std::vector<FormulaPtr> repr_leaves(const Repr& r);

/// Shape fingerprints; equal strings mean identical tree shapes.
std::string shape_of(const Repr& r);
std::string shape_of_type(const TypeExpr& t);

/// Rebuild the representation shape of t over a flat leaf list.
Repr repr_from_leaves(const TypeExpr& t, const std::vector<FormulaPtr>& leaves);

/// Constant representation of a literal.
Repr const_repr(const TypeExpr& t, const Value& v);

/// Allocate the Boolean variables representing a declaration and return the
/// atom tree. Leaf names are path-indexed: integer leaves carry the value,
/// enum leaves the item name, tuple components their 1-based position, array
/// elements and set members the key/element rank. A plain bool adds nothing.
/// `key_prefix` namespaces the registry key (display names stay path-only).
Repr encode_decl(const std::string& name, const TypeExpr& t, VarTable& vars,
                 const std::string& key_prefix = "");

struct TranslateCtx {
  const std::map<std::string, Repr>* env = nullptr;  // variable/parameter representations
  uint64_t domain_cap = kDefaultDomainCap;
};

/// Translate a typechecked, lowered expression into its representation.
Repr translate_expr(const Expr& e, const TranslateCtx& ctx);

/// Select among candidate representations under mutually exclusive guards:
/// leaves become OR of (guard_i AND leaf_i), nodes recurse component-wise.
Repr fix_op(const std::vector<Repr>& elems, const std::vector<FormulaPtr>& guards);

/// Equality formula between two representations of (possibly differently
/// ranged integer) types.
FormulaPtr eq_repr(const Repr& a, const TypeExpr& ta, const Repr& b, const TypeExpr& tb);

/// Equality of a representation against a constant.
FormulaPtr eq_const(const Repr& r, const TypeExpr& t, const Value& c);

/// A concrete assignment target: an atom tree plus the condition under which
/// the reference denotes it.
struct GuardedRef {
  Repr target;
  FormulaPtr guard;
};

/// All (target, guard) pairs a reference expression can denote.
std::vector<GuardedRef> resolve_refs(const Expr& r, const TranslateCtx& ctx);

struct BoolEffect {
  FormulaPtr cond;
  int bit = -1;
  bool value = false;
};

struct BoolParam {
  std::string name;
  TypeExpr type;
  Repr bits;
  std::vector<int> flat;  // atom ids, depth-first
  SlotLayout layout;      // positions into flat
};

struct BoolAction {
  std::string name;
  std::vector<BoolParam> params;
  FormulaPtr pre;
  std::vector<BoolEffect> effects;

  std::vector<int> all_param_bits() const {
    std::vector<int> out;
    for (const auto& p : params) out.insert(out.end(), p.flat.begin(), p.flat.end());
    return out;
  }
};

/// Booleanized planning model. State bits come first in the variable table,
/// in declaration order; parameter bits follow per action.
struct BoolModel {
  VarTable vars;
  int num_state_bits = 0;
  std::vector<std::string> var_order;
  std::map<std::string, TypeExpr> var_type;
  std::map<std::string, Repr> var_repr;
  std::map<std::string, std::vector<int>> var_bits;
  std::vector<std::vector<int>> exactly_one_groups;
  std::vector<bool> init;
  FormulaPtr goal;
  std::vector<BoolAction> actions;
  uint64_t domain_cap = kDefaultDomainCap;
};

/// Conditional assignment -> add/delete effect pairs:
/// (cond AND guard AND value_leaf, bit := true) and
/// (cond AND guard AND NOT value_leaf, bit := false); effects whose condition
/// folds to false are dropped.
std::vector<BoolEffect> booleanize_assignment(const ExprPtr& cond, const Expr& target,
                                              const Expr& value, const TranslateCtx& ctx);

/// Booleanize a lowered, typechecked model.
BoolModel booleanize_model(const SourceModel& lowered, uint64_t domain_cap = kDefaultDomainCap);

}  // namespace typal
