#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace typal {

enum class FKind { True, False, Atom, Not, And, Or, Iff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable propositional formula over integer-identified variables.
/// Built through the factory functions below, which keep And/Or argument
/// lists nonempty and apply the local rewrites: constant folding, double
/// negation, flattening, duplicate removal and complementary-pair detection
/// within one And/Or level, plus Iff constant rules.
struct Formula {
  FKind kind;
  int var = -1;                   // Atom
  std::vector<FormulaPtr> args;   // Not: 1, Iff: 2, And/Or: >= 1

  explicit Formula(FKind k) : kind(k) {}
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(int var);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> fs);
FormulaPtr f_or(std::vector<FormulaPtr> fs);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
inline FormulaPtr f_and2(FormulaPtr a, FormulaPtr b) { return f_and({std::move(a), std::move(b)}); }
inline FormulaPtr f_or2(FormulaPtr a, FormulaPtr b) { return f_or({std::move(a), std::move(b)}); }

bool is_true(const FormulaPtr& f);
bool is_false(const FormulaPtr& f);

/// Structural equality.
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);

/// Rebuild the formula through the factories; logically equivalent and
/// idempotent.
FormulaPtr simplify_formula(const FormulaPtr& f);

/// Evaluate under a total assignment.
bool eval_formula(const FormulaPtr& f, const std::vector<bool>& env);

/// Three-valued evaluation: bits in `known` are fixed, the rest unknown.
enum class TriBool { False, True, Unknown };
TriBool eval_formula_partial(const FormulaPtr& f, const std::vector<bool>& env,
                             const std::vector<bool>& known);

/// Atoms occurring in f, sorted ascending.
std::vector<int> formula_atoms(const FormulaPtr& f);

/// Replace atoms: each entry of `map` sends an atom id to a replacement
/// formula (nullptr entries keep the atom).
FormulaPtr substitute_atoms(const FormulaPtr& f, const std::map<int, FormulaPtr>& map);

/// Canonical string for comparisons up to And/Or argument order.
std::string formula_key(const FormulaPtr& f);

/// Turn construction-time rewrites beyond the structural invariants on or
/// off (CLI --no-simplify). On by default; intended to be set once before
/// translation.
void set_simplification(bool enabled);
bool simplification_enabled();

/// Registry of Boolean variables. Ids are dense and allocation-ordered.
/// Display names are what emission prints; unique keys keep distinct
/// variables distinct even if display names repeat across action scopes.
class VarTable {
 public:
  int add(const std::string& unique_key, const std::string& display);
  int id_of(const std::string& unique_key) const;  // -1 if absent
  const std::string& display(int id) const { return display_[id]; }
  const std::string& key(int id) const { return keys_[id]; }
  int size() const { return static_cast<int>(keys_.size()); }

  /// Allocate a fresh key based on `base`, appending _x<n> on collision.
  std::string fresh_key(const std::string& base) const;

 private:
  std::vector<std::string> keys_;
  std::vector<std::string> display_;
  std::map<std::string, int> index_;
};

/// Render with variable names from a table.
std::string formula_to_string(const FormulaPtr& f, const VarTable& vars);

}  // namespace typal
