#include "typal/formula.hpp"

#include <algorithm>
#include <sstream>

namespace typal {

namespace {

std::atomic<bool> g_simplify{true};

std::shared_ptr<Formula> make(FKind k) { return std::make_shared<Formula>(k); }

const FormulaPtr& true_singleton() {
  static const FormulaPtr f = make(FKind::True);
  return f;
}
const FormulaPtr& false_singleton() {
  static const FormulaPtr f = make(FKind::False);
  return f;
}

}  // namespace

void set_simplification(bool enabled) { g_simplify = enabled; }
bool simplification_enabled() { return g_simplify; }

FormulaPtr f_true() { return true_singleton(); }
FormulaPtr f_false() { return false_singleton(); }

bool is_true(const FormulaPtr& f) { return f->kind == FKind::True; }
bool is_false(const FormulaPtr& f) { return f->kind == FKind::False; }

FormulaPtr f_atom(int var) {
  auto f = std::make_shared<Formula>(FKind::Atom);
  f->var = var;
  return f;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->var != b->var || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!formula_eq(a->args[i], b->args[i])) return false;
  return true;
}

FormulaPtr f_not(FormulaPtr f) {
  if (is_true(f)) return f_false();
  if (is_false(f)) return f_true();
  if (f->kind == FKind::Not) return f->args[0];
  auto n = make(FKind::Not);
  n->args.push_back(std::move(f));
  return FormulaPtr(std::move(n));
}

namespace {

/// Shared And/Or construction. `unit` is the neutral constant, `zero` the
/// absorbing one.
FormulaPtr build_nary(FKind kind, std::vector<FormulaPtr> fs, const FormulaPtr& unit,
                      const FormulaPtr& zero) {
  std::vector<FormulaPtr> flat;
  for (auto& f : fs) {
    if (!f) continue;
    if (f->kind == unit->kind) continue;
    if (f->kind == zero->kind) return zero;
    if (f->kind == kind) {
      for (const auto& a : f->args) flat.push_back(a);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (g_simplify) {
    // Duplicate removal (structural) and complementary-pair detection at
    // this level.
    std::vector<FormulaPtr> uniq;
    for (auto& f : flat) {
      bool dup = false;
      for (const auto& u : uniq)
        if (formula_eq(u, f)) {
          dup = true;
          break;
        }
      if (!dup) uniq.push_back(std::move(f));
    }
    for (size_t i = 0; i < uniq.size(); i++) {
      for (size_t j = 0; j < uniq.size(); j++) {
        if (i == j) continue;
        if (uniq[j]->kind == FKind::Not && formula_eq(uniq[j]->args[0], uniq[i])) return zero;
      }
    }
    flat = std::move(uniq);
  }
  if (flat.empty()) return unit;
  if (flat.size() == 1) return flat[0];
  auto n = make(kind);
  n->args = std::move(flat);
  return FormulaPtr(std::move(n));
}

}  // namespace

FormulaPtr f_and(std::vector<FormulaPtr> fs) {
  return build_nary(FKind::And, std::move(fs), f_true(), f_false());
}

FormulaPtr f_or(std::vector<FormulaPtr> fs) {
  return build_nary(FKind::Or, std::move(fs), f_false(), f_true());
}

FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (is_false(a)) return f_not(b);
  if (is_false(b)) return f_not(a);
  if (g_simplify && formula_eq(a, b)) return f_true();
  auto n = make(FKind::Iff);
  n->args.push_back(std::move(a));
  n->args.push_back(std::move(b));
  return FormulaPtr(std::move(n));
}

FormulaPtr simplify_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
      return f;
    case FKind::Not:
      return f_not(simplify_formula(f->args[0]));
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(simplify_formula(a));
      return f->kind == FKind::And ? f_and(std::move(args)) : f_or(std::move(args));
    }
    case FKind::Iff:
      return f_iff(simplify_formula(f->args[0]), simplify_formula(f->args[1]));
  }
  return f;
}

bool eval_formula(const FormulaPtr& f, const std::vector<bool>& env) {
  switch (f->kind) {
    case FKind::True:
      return true;
    case FKind::False:
      return false;
    case FKind::Atom:
      return env[f->var];
    case FKind::Not:
      return !eval_formula(f->args[0], env);
    case FKind::And:
      for (const auto& a : f->args)
        if (!eval_formula(a, env)) return false;
      return true;
    case FKind::Or:
      for (const auto& a : f->args)
        if (eval_formula(a, env)) return true;
      return false;
    case FKind::Iff:
      return eval_formula(f->args[0], env) == eval_formula(f->args[1], env);
  }
  return false;
}

TriBool eval_formula_partial(const FormulaPtr& f, const std::vector<bool>& env,
                             const std::vector<bool>& known) {
  switch (f->kind) {
    case FKind::True:
      return TriBool::True;
    case FKind::False:
      return TriBool::False;
    case FKind::Atom:
      if (!known[f->var]) return TriBool::Unknown;
      return env[f->var] ? TriBool::True : TriBool::False;
    case FKind::Not: {
      TriBool t = eval_formula_partial(f->args[0], env, known);
      if (t == TriBool::Unknown) return t;
      return t == TriBool::True ? TriBool::False : TriBool::True;
    }
    case FKind::And: {
      bool unknown = false;
      for (const auto& a : f->args) {
        TriBool t = eval_formula_partial(a, env, known);
        if (t == TriBool::False) return TriBool::False;
        if (t == TriBool::Unknown) unknown = true;
      }
      return unknown ? TriBool::Unknown : TriBool::True;
    }
    case FKind::Or: {
      bool unknown = false;
      for (const auto& a : f->args) {
        TriBool t = eval_formula_partial(a, env, known);
        if (t == TriBool::True) return TriBool::True;
        if (t == TriBool::Unknown) unknown = true;
      }
      return unknown ? TriBool::Unknown : TriBool::False;
    }
    case FKind::Iff: {
      TriBool a = eval_formula_partial(f->args[0], env, known);
      TriBool b = eval_formula_partial(f->args[1], env, known);
      if (a == TriBool::Unknown || b == TriBool::Unknown) return TriBool::Unknown;
      return a == b ? TriBool::True : TriBool::False;
    }
  }
  return TriBool::Unknown;
}

namespace {

void collect_atoms(const FormulaPtr& f, std::vector<int>& out) {
  if (f->kind == FKind::Atom) {
    out.push_back(f->var);
    return;
  }
  for (const auto& a : f->args) collect_atoms(a, out);
}

}  // namespace

std::vector<int> formula_atoms(const FormulaPtr& f) {
  std::vector<int> out;
  collect_atoms(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FormulaPtr substitute_atoms(const FormulaPtr& f, const std::map<int, FormulaPtr>& map) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::Atom: {
      auto it = map.find(f->var);
      if (it != map.end() && it->second) return it->second;
      return f;
    }
    case FKind::Not:
      return f_not(substitute_atoms(f->args[0], map));
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(substitute_atoms(a, map));
      return f->kind == FKind::And ? f_and(std::move(args)) : f_or(std::move(args));
    }
    case FKind::Iff:
      return f_iff(substitute_atoms(f->args[0], map), substitute_atoms(f->args[1], map));
  }
  return f;
}

std::string formula_key(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
      return "T";
    case FKind::False:
      return "F";
    case FKind::Atom:
      return "a" + std::to_string(f->var);
    case FKind::Not:
      return "(!" + formula_key(f->args[0]) + ")";
    case FKind::And:
    case FKind::Or: {
      std::vector<std::string> keys;
      keys.reserve(f->args.size());
      for (const auto& a : f->args) keys.push_back(formula_key(a));
      std::sort(keys.begin(), keys.end());
      std::string out = f->kind == FKind::And ? "(&" : "(|";
      for (const auto& k : keys) out += " " + k;
      return out + ")";
    }
    case FKind::Iff: {
      std::string a = formula_key(f->args[0]), b = formula_key(f->args[1]);
      if (b < a) std::swap(a, b);
      return "(= " + a + " " + b + ")";
    }
  }
  return "?";
}

int VarTable::add(const std::string& unique_key, const std::string& display) {
  auto it = index_.find(unique_key);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(keys_.size());
  keys_.push_back(unique_key);
  display_.push_back(display);
  index_[unique_key] = id;
  return id;
}

int VarTable::id_of(const std::string& unique_key) const {
  auto it = index_.find(unique_key);
  return it == index_.end() ? -1 : it->second;
}

std::string VarTable::fresh_key(const std::string& base) const {
  if (!index_.count(base)) return base;
  for (int n = 1;; n++) {
    std::string cand = base + "_x" + std::to_string(n);
    if (!index_.count(cand)) return cand;
  }
}

std::string formula_to_string(const FormulaPtr& f, const VarTable& vars) {
  switch (f->kind) {
    case FKind::True:
      return "true";
    case FKind::False:
      return "false";
    case FKind::Atom:
      return vars.display(f->var);
    case FKind::Not:
      return "!" + formula_to_string(f->args[0], vars);
    case FKind::And:
    case FKind::Or: {
      std::string out = "(";
      for (size_t i = 0; i < f->args.size(); i++) {
        if (i) out += f->kind == FKind::And ? " & " : " | ";
        out += formula_to_string(f->args[i], vars);
      }
      return out + ")";
    }
    case FKind::Iff:
      return "(" + formula_to_string(f->args[0], vars) + " <-> " +
             formula_to_string(f->args[1], vars) + ")";
  }
  return "?";
}

}  // namespace typal
