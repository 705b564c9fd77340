#include "typal/strips.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace typal {

FormulaPtr to_nnf(const FormulaPtr& f) {
  struct Rec {
    static FormulaPtr go(const FormulaPtr& f, bool pos) {
      switch (f->kind) {
        case FKind::True:
          return pos ? f_true() : f_false();
        case FKind::False:
          return pos ? f_false() : f_true();
        case FKind::Atom:
          return pos ? f : f_not(f);
        case FKind::Not:
          return go(f->args[0], !pos);
        case FKind::And:
        case FKind::Or: {
          std::vector<FormulaPtr> args;
          args.reserve(f->args.size());
          for (const auto& a : f->args) args.push_back(go(a, pos));
          const bool conj = (f->kind == FKind::And) == pos;
          return conj ? f_and(std::move(args)) : f_or(std::move(args));
        }
        case FKind::Iff: {
          FormulaPtr a = f->args[0], b = f->args[1];
          if (pos)
            return f_or2(f_and2(go(a, true), go(b, true)), f_and2(go(a, false), go(b, false)));
          return f_or2(f_and2(go(a, true), go(b, false)), f_and2(go(a, false), go(b, true)));
        }
      }
      return f;
    }
  };
  return Rec::go(f, true);
}

namespace {

bool has_or(const FormulaPtr& f) {
  if (f->kind == FKind::Or) return true;
  for (const auto& a : f->args)
    if (has_or(a)) return true;
  return false;
}

/// Literal-conjunction view of a disjunction-free NNF formula.
/// nullopt = unsatisfiable (constant false).
std::optional<std::vector<Literal>> to_literal_list(const FormulaPtr& f) {
  std::vector<Literal> out;
  struct Rec {
    static bool go(const FormulaPtr& f, std::vector<Literal>& out) {
      switch (f->kind) {
        case FKind::True:
          return true;
        case FKind::False:
          return false;
        case FKind::Atom:
          out.push_back({f->var, true});
          return true;
        case FKind::Not:
          if (f->args[0]->kind != FKind::Atom)
            throw LowerError("negation above a non-atom after lowering");
          out.push_back({f->args[0]->var, false});
          return true;
        case FKind::And:
          for (const auto& a : f->args)
            if (!go(a, out)) return false;
          return true;
        default:
          throw LowerError("residual disjunction or equivalence after lowering");
      }
    }
  };
  if (!Rec::go(f, out)) return std::nullopt;
  return out;
}

struct WEffect {
  FormulaPtr cond;
  int bit;
  bool value;
};

struct WAction {
  std::string name;
  StripsActionKind kind = StripsActionKind::Main;
  std::string original;
  std::vector<int> param_bits;
  std::vector<std::vector<int>> groups;
  std::vector<int> free_bits;
  std::map<int, std::string> bit_param;
  FormulaPtr pre;
  std::vector<WEffect> effects;
};

class Lowerer {
 public:
  Lowerer(const BoolModel& bm, int max_params) : bm_(bm), m_(max_params) {
    if (m_ < 1) throw LowerError("max-params must be at least 1");
    out_.vars = bm.vars;
    out_.init.assign(bm.vars.size(), false);
    for (int i = 0; i < bm.num_state_bits; i++) {
      out_.state_bits.push_back(i);
      out_.init[i] = bm.init[i];
    }
    out_.num_original_bits = bm.num_state_bits;
    out_.exactly_one_groups = bm.exactly_one_groups;
    out_.var_bits = bm.var_bits;
    out_.var_type = bm.var_type;
    out_.var_order = bm.var_order;
    for (const auto& a : bm.actions) action_names_.insert(a.name);
  }

  LoweredModel run() {
    if (!bm_.actions.empty()) {
      p0_ = new_state_bit("p0");
      out_.init[p0_] = true;
    }

    for (const auto& ba : bm_.actions) {
      WAction main = from_bool_action(ba);
      ActionChainMeta meta;
      meta.original = ba.name;
      for (const auto& p : ba.params) {
        OrigParamMeta pm;
        pm.name = p.name;
        pm.type_text = type_to_string(p.type);
        for (int b : p.flat) pm.bit_keys.push_back(out_.vars.key(b));
        meta.params.push_back(std::move(pm));
      }
      if (!emit_chain(std::move(main), meta)) continue;  // statically inapplicable
      meta_.actions.push_back(std::move(meta));
    }

    finish_goal();
    return {std::move(out_), std::move(meta_)};
  }

 private:
  WAction from_bool_action(const BoolAction& ba) {
    WAction wa;
    wa.name = ba.name;
    wa.kind = StripsActionKind::Main;
    wa.original = ba.name;
    for (const auto& p : ba.params) {
      for (size_t i = 0; i < p.flat.size(); i++) {
        wa.param_bits.push_back(p.flat[i]);
        wa.bit_param[p.flat[i]] = p.name;
      }
      for (const auto& g : p.layout.groups) {
        std::vector<int> ids;
        for (size_t pos : g) ids.push_back(p.flat[pos]);
        wa.groups.push_back(std::move(ids));
      }
      for (size_t pos : p.layout.free_bits) wa.free_bits.push_back(p.flat[pos]);
    }
    wa.pre = to_nnf(ba.pre);
    for (const auto& e : ba.effects) wa.effects.push_back({to_nnf(e.cond), e.bit, e.value});
    return wa;
  }

  int new_state_bit(const std::string& base) {
    const std::string key = out_.vars.fresh_key(base);
    const int id = out_.vars.add(key, key);
    out_.state_bits.push_back(id);
    if (static_cast<size_t>(id) >= out_.init.size()) out_.init.resize(id + 1, false);
    out_.init[id] = false;
    return id;
  }

  std::string fresh_action(const std::string& base) {
    std::string name = base;
    int n = 1;
    while (action_names_.count(name)) name = base + "_x" + std::to_string(n++);
    action_names_.insert(name);
    return name;
  }

  /// One elimination round: replace every disjunction whose disjuncts are
  /// disjunction-free by a fresh auxiliary variable.
  FormulaPtr replace_innermost(const FormulaPtr& f, const std::string& orig, int round,
                               int& counter, std::vector<std::pair<int, FormulaPtr>>& found) {
    switch (f->kind) {
      case FKind::True:
      case FKind::False:
      case FKind::Atom:
        return f;
      case FKind::Not:
        if (f->args[0]->kind != FKind::Atom)
          throw LowerError("formula not in negation normal form");
        return f;
      case FKind::And: {
        std::vector<FormulaPtr> args;
        for (const auto& a : f->args)
          args.push_back(replace_innermost(a, orig, round, counter, found));
        return f_and(std::move(args));
      }
      case FKind::Or: {
        bool inner = false;
        for (const auto& a : f->args)
          if (has_or(a)) inner = true;
        if (!inner) {
          const int w = new_state_bit("w_" + orig + "_" + std::to_string(round) + "_" +
                                      std::to_string(counter++));
          found.push_back({w, f});
          return f_atom(w);
        }
        std::vector<FormulaPtr> args;
        for (const auto& a : f->args)
          args.push_back(replace_innermost(a, orig, round, counter, found));
        return f_or(std::move(args));
      }
      case FKind::Iff:
        throw LowerError("equivalence not expanded before elimination");
    }
    return f;
  }

  /// Eliminate disjunctions from an action's condition slots; returns the
  /// auxiliary actions in execution order and rewrites `wa` in place.
  std::vector<WAction> eliminate(WAction& wa, ActionChainMeta& meta) {
    std::vector<FormulaPtr*> slots;
    slots.push_back(&wa.pre);
    for (auto& e : wa.effects) slots.push_back(&e.cond);

    std::vector<std::vector<std::pair<int, FormulaPtr>>> rounds;
    for (int round = 1;; round++) {
      std::vector<std::pair<int, FormulaPtr>> found;
      int counter = 1;
      for (auto* s : slots) *s = replace_innermost(*s, wa.name, round, counter, found);
      if (found.empty()) break;
      rounds.push_back(std::move(found));
    }

    std::vector<WAction> chain;
    std::map<int, FormulaPtr> subst;
    std::set<int> pset(wa.param_bits.begin(), wa.param_bits.end());

    for (size_t i = 0; i < rounds.size(); i++) {
      WAction b;
      b.name = fresh_action("b_" + wa.name + "_" + std::to_string(i + 1));
      b.kind = StripsActionKind::Aux;
      b.original = wa.original;
      b.pre = f_true();

      // Parameters referenced by this round's disjuncts move here entirely
      // (whole typed parameters, so one-hot groups never straddle actions).
      std::set<int> patoms;
      for (const auto& [w, phi] : rounds[i]) {
        (void)w;
        for (int atom : formula_atoms(substitute_atoms(phi, subst)))
          if (pset.count(atom)) patoms.insert(atom);
      }
      std::vector<std::string> moved_names;
      for (int bit : wa.param_bits)
        if (patoms.count(bit)) {
          const std::string& pn = wa.bit_param.at(bit);
          if (std::find(moved_names.begin(), moved_names.end(), pn) == moved_names.end())
            moved_names.push_back(pn);
        }
      std::map<int, FormulaPtr> subst_new;
      for (const auto& pn : moved_names) {
        std::vector<int> bits;
        for (int bit : wa.param_bits)
          if (wa.bit_param.at(bit) == pn) bits.push_back(bit);
        std::set<int> bset(bits.begin(), bits.end());
        auto in_bset = [&](int x) { return bset.count(x) > 0; };
        for (auto it = wa.groups.begin(); it != wa.groups.end();) {
          if (in_bset(it->front())) {
            b.groups.push_back(*it);
            it = wa.groups.erase(it);
          } else {
            ++it;
          }
        }
        for (auto it = wa.free_bits.begin(); it != wa.free_bits.end();) {
          if (in_bset(*it)) {
            b.free_bits.push_back(*it);
            it = wa.free_bits.erase(it);
          } else {
            ++it;
          }
        }
        wa.param_bits.erase(
            std::remove_if(wa.param_bits.begin(), wa.param_bits.end(), in_bset),
            wa.param_bits.end());
        for (int bit : bits) {
          b.param_bits.push_back(bit);
          b.bit_param[bit] = pn;
          pset.erase(bit);
          const int shadow = new_state_bit("vs_" + wa.name + "_" + out_.vars.display(bit));
          b.effects.push_back({f_atom(bit), shadow, true});
          b.effects.push_back({f_not(f_atom(bit)), shadow, false});
          subst_new[bit] = f_atom(shadow);
          meta.moved_owner[out_.vars.key(bit)] = b.name;
          meta.moved_store[out_.vars.key(bit)] = out_.vars.key(shadow);
          wa_shadows_.push_back(shadow);
        }
      }

      for (const auto& [w, phi] : rounds[i]) {
        FormulaPtr prepared = substitute_atoms(phi, subst);
        meta.w_formulas[out_.vars.display(w)] = formula_to_string(prepared, out_.vars);
        if (prepared->kind == FKind::Or) {
          for (const auto& psi : prepared->args)
            b.effects.push_back({psi, w, true});
        } else if (!is_false(prepared)) {
          b.effects.push_back({prepared, w, true});
        }
        wa.effects.push_back({f_true(), w, false});  // reset after use
      }
      for (auto& [k, v] : subst_new) subst[k] = v;
      chain.push_back(std::move(b));
    }

    if (!subst.empty()) {
      wa.pre = substitute_atoms(wa.pre, subst);
      for (auto& e : wa.effects) e.cond = substitute_atoms(e.cond, subst);
    }
    for (int shadow : wa_shadows_) wa.effects.push_back({f_true(), shadow, false});
    wa_shadows_.clear();
    return chain;
  }

  /// Partition an oversized action's parameter bits into a store-copying
  /// sub-action chain. Parameter literals of the (conjunctive) precondition
  /// are fixed and removed; the precondition transfers to the first
  /// sub-action.
  std::optional<std::vector<WAction>> split(WAction x, ActionChainMeta& meta) {
    if (static_cast<int>(x.param_bits.size()) <= m_) return std::vector<WAction>{std::move(x)};

    auto lits = to_literal_list(x.pre);
    if (!lits) return std::nullopt;  // statically unsatisfiable

    std::set<int> pset(x.param_bits.begin(), x.param_bits.end());
    std::map<int, bool> fixed;
    bool unsat = false;
    auto fix_bit = [&](int b, bool v) {
      auto it = fixed.find(b);
      if (it != fixed.end()) {
        if (it->second != v) unsat = true;
      } else {
        fixed[b] = v;
      }
    };
    for (const auto& l : *lits)
      if (pset.count(l.bit)) fix_bit(l.bit, l.positive);

    // One-hot group propagation over the fixes.
    bool changed = !fixed.empty();
    while (changed && !unsat) {
      changed = false;
      for (const auto& g : x.groups) {
        int ntrue = 0, nunknown = 0, last_unknown = -1;
        for (int b : g) {
          auto it = fixed.find(b);
          if (it == fixed.end()) {
            nunknown++;
            last_unknown = b;
          } else if (it->second) {
            ntrue++;
          }
        }
        if (ntrue > 1 || (ntrue == 0 && nunknown == 0)) {
          unsat = true;
          break;
        }
        if (ntrue == 1 && nunknown > 0) {
          for (int b : g)
            if (!fixed.count(b)) fix_bit(b, false);
          changed = true;
        } else if (ntrue == 0 && nunknown == 1) {
          fix_bit(last_unknown, true);
          changed = true;
        }
      }
    }
    if (unsat) return std::nullopt;

    if (!fixed.empty()) {
      std::map<int, FormulaPtr> fsub;
      for (const auto& [b, v] : fixed) {
        fsub[b] = v ? f_true() : f_false();
        meta.fixed_bits[out_.vars.key(b)] = v;
      }
      x.pre = substitute_atoms(x.pre, fsub);
      for (auto& e : x.effects) e.cond = substitute_atoms(e.cond, fsub);
      auto is_fixed = [&](int b) { return fixed.count(b) > 0; };
      x.param_bits.erase(std::remove_if(x.param_bits.begin(), x.param_bits.end(), is_fixed),
                         x.param_bits.end());
      x.free_bits.erase(std::remove_if(x.free_bits.begin(), x.free_bits.end(), is_fixed),
                        x.free_bits.end());
      for (auto it = x.groups.begin(); it != x.groups.end();) {
        it->erase(std::remove_if(it->begin(), it->end(), is_fixed), it->end());
        it = it->empty() ? x.groups.erase(it) : std::next(it);
      }
    }

    if (static_cast<int>(x.param_bits.size()) <= m_)
      return std::vector<WAction>{std::move(x)};

    // Units: whole one-hot groups plus single free bits, in flat bit order.
    std::map<int, const std::vector<int>*> group_of_first;
    std::set<int> grouped;
    for (const auto& g : x.groups) {
      group_of_first[g.front()] = &g;
      for (int b : g) grouped.insert(b);
    }
    struct Unit {
      std::vector<int> bits;
      bool is_group;
    };
    std::vector<Unit> units;
    for (int b : x.param_bits) {
      auto it = group_of_first.find(b);
      if (it != group_of_first.end())
        units.push_back({*it->second, true});
      else if (!grouped.count(b))
        units.push_back({{b}, false});
    }

    std::vector<std::vector<Unit>> parts;
    std::vector<Unit> cur;
    int cur_size = 0;
    for (auto& u : units) {
      if (static_cast<int>(u.bits.size()) > m_)
        throw LowerError("parameter value slot of " + x.name + " needs " +
                         std::to_string(u.bits.size()) +
                         " bits, above max-params; raise --max-params");
      if (cur_size + static_cast<int>(u.bits.size()) > m_) {
        parts.push_back(std::move(cur));
        cur.clear();
        cur_size = 0;
      }
      cur_size += static_cast<int>(u.bits.size());
      cur.push_back(std::move(u));
    }
    if (!cur.empty()) parts.push_back(std::move(cur));

    std::vector<WAction> out;
    std::map<int, FormulaPtr> subst;
    for (size_t i = 0; i < parts.size(); i++) {
      WAction c;
      c.name = fresh_action("c_" + x.name + "_" + std::to_string(i + 1));
      c.kind = StripsActionKind::Aux;
      c.original = x.original;
      c.pre = f_true();
      for (auto& u : parts[i]) {
        if (u.is_group) c.groups.push_back(u.bits);
        for (int b : u.bits) {
          if (!u.is_group) c.free_bits.push_back(b);
          c.param_bits.push_back(b);
          auto bp = x.bit_param.find(b);
          if (bp != x.bit_param.end()) c.bit_param[b] = bp->second;
          const int store = new_state_bit("ps_" + x.name + "_" + out_.vars.display(b));
          c.effects.push_back({f_atom(b), store, true});
          c.effects.push_back({f_not(f_atom(b)), store, false});
          subst[b] = f_atom(store);
          meta.moved_owner[out_.vars.key(b)] = c.name;
          meta.moved_store[out_.vars.key(b)] = out_.vars.key(store);
          // Stores are reset together with the main action's auxiliaries.
          x.effects.push_back({f_true(), store, false});
        }
      }
      out.push_back(std::move(c));
    }

    // Transfer the (parameter-free by now) precondition to the chain head.
    out.front().pre = x.pre;
    x.pre = f_true();
    x.param_bits.clear();
    x.groups.clear();
    x.free_bits.clear();
    for (auto& e : x.effects) e.cond = substitute_atoms(e.cond, subst);
    out.push_back(std::move(x));
    return out;
  }

  /// Turnstile wiring over a flattened chain ending in the main action.
  void wire(std::vector<WAction>& chain, const std::string& orig) {
    const size_t n = chain.size();
    if (n == 1) {
      chain[0].pre = f_and2(chain[0].pre, f_atom(p0_));
      return;
    }
    std::vector<int> toks;
    for (size_t i = 0; i + 1 < n; i++)
      toks.push_back(new_state_bit("p_" + orig + "_" + std::to_string(i + 1)));
    for (size_t i = 0; i < n; i++) {
      const int in_tok = i == 0 ? p0_ : toks[i - 1];
      const int out_tok = i + 1 < n ? toks[i] : p0_;
      chain[i].pre = f_and2(chain[i].pre, f_atom(in_tok));
      chain[i].effects.push_back({f_true(), in_tok, false});
      chain[i].effects.push_back({f_true(), out_tok, true});
    }
  }

  StripsAction to_strips(const WAction& wa) {
    StripsAction sa;
    sa.name = wa.name;
    sa.kind = wa.kind;
    sa.original = wa.original;
    sa.param_bits = wa.param_bits;
    sa.param_groups = wa.groups;
    sa.free_bits = wa.free_bits;
    auto pre = to_literal_list(wa.pre);
    if (!pre) throw LowerError("unsatisfiable precondition survived chain construction");
    sa.pre = *pre;
    for (const auto& e : wa.effects) {
      auto cond = to_literal_list(e.cond);
      if (!cond) continue;  // condition folded to false
      sa.effects.push_back({*cond, e.bit, e.value});
    }
    return sa;
  }

  /// Eliminate, split, wire and emit one action chain. Returns false when
  /// the action's precondition is statically false.
  bool emit_chain(WAction main, ActionChainMeta& meta) {
    std::vector<WAction> bs = eliminate(main, meta);
    if (is_false(main.pre)) return false;

    std::vector<WAction> flat;
    for (auto& b : bs) {
      auto parts = split(std::move(b), meta);
      if (!parts) return false;
      for (auto& p : *parts) flat.push_back(std::move(p));
    }
    {
      auto parts = split(std::move(main), meta);
      if (!parts) return false;
      for (auto& p : *parts) flat.push_back(std::move(p));
    }

    wire(flat, meta.original.empty() ? flat.back().name : meta.original);

    for (size_t i = 0; i < flat.size(); i++) {
      StripsAction sa = to_strips(flat[i]);
      if (i + 1 < flat.size()) {
        ChainMemberMeta cm;
        cm.name = sa.name;
        for (int b : sa.param_bits) cm.arg_bit_keys.push_back(out_.vars.key(b));
        meta.chain.push_back(std::move(cm));
      } else {
        for (int b : sa.param_bits)
          meta.main_arg_bit_keys.push_back(out_.vars.key(b));
      }
      out_.actions.push_back(std::move(sa));
    }
    return true;
  }

  void finish_goal() {
    FormulaPtr g = to_nnf(bm_.goal);
    if (!has_or(g)) {
      auto lits = to_literal_list(g);
      if (lits) {
        out_.goal = *lits;
        return;
      }
      // Statically false goal: an unreachable fresh bit keeps it well-formed.
      const int gr = new_state_bit("goal_reached");
      out_.goal = {{gr, true}};
      return;
    }
    WAction fin;
    fin.name = fresh_action("finish");
    fin.kind = StripsActionKind::Finish;
    fin.original = "";
    fin.pre = g;
    const int gr = new_state_bit("goal_reached");
    fin.effects.push_back({f_true(), gr, true});

    ActionChainMeta meta;
    meta.original = fin.name;
    const size_t before = out_.actions.size();
    if (emit_chain(std::move(fin), meta)) {
      meta_.finish_action = out_.actions.back().name;
      for (size_t i = before; i + 1 < out_.actions.size(); i++)
        meta_.goal_chain.push_back(out_.actions[i].name);
      out_.goal = {{gr, true}};
    } else {
      out_.goal = {{gr, true}};  // goal chain statically unsatisfiable
    }
  }

  const BoolModel& bm_;
  int m_;
  StripsModel out_;
  ChainMetadata meta_;
  std::set<std::string> action_names_;
  std::vector<int> wa_shadows_;
  int p0_ = -1;
};

}  // namespace

LoweredModel lower_to_strips(const BoolModel& bm, int max_params) {
  return Lowerer(bm, max_params).run();
}

}  // namespace typal
