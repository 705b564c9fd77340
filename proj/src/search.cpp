#include "typal/search.hpp"

#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "typal/pretty.hpp"

namespace typal {

namespace {

// ---------------------------------------------------------------------------
// Packed states
// ---------------------------------------------------------------------------

struct Packed {
  std::vector<uint64_t> w;
  bool operator==(const Packed& o) const { return w == o.w; }
};

struct PackedHash {
  size_t operator()(const Packed& p) const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t x : p.w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

Packed pack(const std::vector<bool>& env, const std::vector<int>& state_bits) {
  Packed p;
  p.w.assign((state_bits.size() + 63) / 64, 0);
  for (size_t i = 0; i < state_bits.size(); i++)
    if (env[state_bits[i]]) p.w[i / 64] |= 1ull << (i % 64);
  return p;
}

void unpack(const Packed& p, const std::vector<int>& state_bits, std::vector<bool>& env) {
  for (size_t i = 0; i < state_bits.size(); i++)
    env[state_bits[i]] = (p.w[i / 64] >> (i % 64)) & 1;
}

// ---------------------------------------------------------------------------
// Source-level search
// ---------------------------------------------------------------------------

std::string state_key(const SourceState& s) {
  std::string k;
  for (const auto& [n, v] : s) {
    k += n;
    k += '=';
    k += value_to_string(v);
    k += ';';
  }
  return k;
}

}  // namespace

SourceSearchResult bfs_source(const SourceModel& lowered, const SearchLimits& lim,
                              uint64_t domain_cap) {
  SourceSearchResult res;

  // Ground argument tuples per action, in domain order.
  std::vector<std::vector<std::vector<Value>>> ground_args(lowered.actions.size());
  for (size_t ai = 0; ai < lowered.actions.size(); ai++) {
    const Action& a = lowered.actions[ai];
    std::vector<std::vector<Value>> tuples{{}};
    for (const auto& p : a.params) {
      auto dom = dom_values(p.type, domain_cap);
      std::vector<std::vector<Value>> next;
      next.reserve(tuples.size() * dom.size());
      for (const auto& t : tuples)
        for (const auto& v : dom) {
          auto t2 = t;
          t2.push_back(v);
          next.push_back(std::move(t2));
        }
      tuples = std::move(next);
    }
    ground_args[ai] = std::move(tuples);
  }

  struct Node {
    std::string parent;
    size_t action;
    size_t tuple;
  };
  SourceState init = initial_state(lowered);
  std::unordered_map<std::string, Node> seen;
  std::unordered_map<std::string, SourceState> states;
  std::deque<std::string> queue;

  const std::string ik = state_key(init);
  seen[ik] = {"", 0, 0};
  states[ik] = init;
  queue.push_back(ik);

  std::string goal_key;
  bool found = goal_holds(lowered, init);
  if (found) goal_key = ik;

  while (!queue.empty() && !found) {
    res.stats.frontier_peak = std::max<uint64_t>(res.stats.frontier_peak, queue.size());
    const std::string cur = queue.front();
    queue.pop_front();
    const SourceState s = states.at(cur);
    res.stats.expanded++;
    if (seen.size() > lim.max_states) {
      res.cap_exceeded = true;
      return res;
    }
    for (size_t ai = 0; ai < lowered.actions.size() && !found; ai++) {
      for (size_t ti = 0; ti < ground_args[ai].size() && !found; ti++) {
        SourceState next;
        try {
          next = apply_action(lowered, s, lowered.actions[ai], ground_args[ai][ti]);
        } catch (const EvalError&) {
          continue;  // inapplicable (precondition, conflict or range error)
        }
        std::string nk = state_key(next);
        if (seen.count(nk)) continue;
        seen[nk] = {cur, ai, ti};
        states[nk] = std::move(next);
        queue.push_back(nk);
        if (goal_holds(lowered, states[nk])) {
          found = true;
          goal_key = nk;
        }
      }
    }
  }

  if (!found) return res;
  res.solved = true;
  std::vector<SourcePlanStep> rev;
  for (std::string at = goal_key; at != ik;) {
    const Node& n = seen.at(at);
    rev.push_back({lowered.actions[n.action].name, ground_args[n.action][n.tuple]});
    at = n.parent;
  }
  res.plan.assign(rev.rbegin(), rev.rend());
  return res;
}

// ---------------------------------------------------------------------------
// Boolean-level search
// ---------------------------------------------------------------------------

namespace {

/// Complete slot-wise enumeration of parameter-bit assignments with
/// three-valued precondition pruning. Units are one-hot groups and free
/// bits, visited in flat bit order.
class ParamEnumerator {
 public:
  ParamEnumerator(const std::vector<std::vector<int>>& groups, const std::vector<int>& free_bits,
                  const std::vector<int>& all_bits, const FormulaPtr& pre)
      : pre_(pre) {
    std::map<int, const std::vector<int>*> group_at;
    for (const auto& g : groups) group_at[g.front()] = &g;
    std::set<int> frees(free_bits.begin(), free_bits.end());
    for (int b : all_bits) {
      auto it = group_at.find(b);
      if (it != group_at.end())
        units_.push_back({*it->second, true});
      else if (frees.count(b))
        units_.push_back({{b}, false});
    }
  }

  /// visit() is called once per surviving full assignment with the bits
  /// already in env. Returning false stops the enumeration.
  void enumerate(std::vector<bool>& env, std::vector<bool>& known,
                 const std::function<bool()>& visit) {
    stop_ = false;
    rec(0, env, known, visit);
  }

 private:
  struct Unit {
    std::vector<int> bits;
    bool group;
  };

  void rec(size_t u, std::vector<bool>& env, std::vector<bool>& known,
           const std::function<bool()>& visit) {
    if (stop_) return;
    if (pre_ && eval_formula_partial(pre_, env, known) == TriBool::False) return;
    if (u == units_.size()) {
      if (!visit()) stop_ = true;
      return;
    }
    const Unit& unit = units_[u];
    if (!unit.group) {
      const int b = unit.bits[0];
      known[b] = true;
      for (bool v : {false, true}) {
        env[b] = v;
        rec(u + 1, env, known, visit);
      }
      known[b] = false;
      return;
    }
    for (int b : unit.bits) known[b] = true;
    for (size_t i = 0; i < unit.bits.size(); i++) {
      for (size_t j = 0; j < unit.bits.size(); j++) env[unit.bits[j]] = (j == i);
      rec(u + 1, env, known, visit);
    }
    for (int b : unit.bits) known[b] = false;
  }

  FormulaPtr pre_;
  std::vector<Unit> units_;
  bool stop_ = false;
};

}  // namespace

BoolSearchResult bfs_bool(const BoolModel& bm, const SearchLimits& lim) {
  BoolSearchResult res;
  std::vector<int> state_bits(bm.num_state_bits);
  for (int i = 0; i < bm.num_state_bits; i++) state_bits[i] = i;

  std::vector<bool> env(bm.vars.size(), false);
  std::vector<bool> known(bm.vars.size(), false);
  for (int i = 0; i < bm.num_state_bits; i++) {
    env[i] = bm.init[i];
    known[i] = true;
  }

  struct Node {
    Packed parent;
    int action;
    std::vector<bool> args;
  };
  std::unordered_map<Packed, Node, PackedHash> seen;
  std::deque<Packed> queue;

  const Packed init = pack(env, state_bits);
  seen[init] = {Packed{}, -1, {}};
  queue.push_back(init);

  auto goal_in = [&](std::vector<bool>& e) { return eval_formula(bm.goal, e); };

  Packed goal_state;
  bool found = false;
  {
    std::vector<bool> e(bm.vars.size(), false);
    unpack(init, state_bits, e);
    if (goal_in(e)) {
      found = true;
      goal_state = init;
    }
  }

  while (!queue.empty() && !found) {
    res.stats.frontier_peak = std::max<uint64_t>(res.stats.frontier_peak, queue.size());
    Packed cur = queue.front();
    queue.pop_front();
    res.stats.expanded++;
    if (seen.size() > lim.max_states) {
      res.cap_exceeded = true;
      return res;
    }
    unpack(cur, state_bits, env);

    for (size_t ai = 0; ai < bm.actions.size() && !found; ai++) {
      const BoolAction& a = bm.actions[ai];
      std::vector<std::vector<int>> groups;
      std::vector<int> frees;
      std::vector<int> all_bits;
      for (const auto& p : a.params) {
        for (const auto& g : p.layout.groups) {
          std::vector<int> ids;
          for (size_t pos : g) ids.push_back(p.flat[pos]);
          groups.push_back(std::move(ids));
        }
        for (size_t pos : p.layout.free_bits) frees.push_back(p.flat[pos]);
        all_bits.insert(all_bits.end(), p.flat.begin(), p.flat.end());
      }
      ParamEnumerator en(groups, frees, all_bits, a.pre);
      en.enumerate(env, known, [&]() -> bool {
        if (eval_formula(a.pre, env) != true) return true;
        // apply effects; conflicting writes make the instance inapplicable
        std::map<int, bool> writes;
        bool conflict = false;
        for (const auto& e : a.effects) {
          if (!eval_formula(e.cond, env)) continue;
          auto [it, inserted] = writes.emplace(e.bit, e.value);
          if (!inserted && it->second != e.value) {
            conflict = true;
            break;
          }
        }
        if (conflict) return true;
        std::vector<bool> nenv = env;
        for (const auto& [b, v] : writes) nenv[b] = v;
        Packed np = pack(nenv, state_bits);
        if (!seen.count(np)) {
          std::vector<bool> args;
          for (int b : all_bits) args.push_back(env[b]);
          seen[np] = {cur, static_cast<int>(ai), std::move(args)};
          queue.push_back(np);
          if (goal_in(nenv)) {
            found = true;
            goal_state = np;
            return false;
          }
        }
        return true;
      });
    }
  }

  if (!found) return res;
  res.solved = true;
  std::vector<BoolPlanStep> rev;
  for (Packed at = goal_state; !(at == init);) {
    const Node& n = seen.at(at);
    rev.push_back({n.action, n.args});
    at = n.parent;
  }
  res.plan.assign(rev.rbegin(), rev.rend());
  return res;
}

// ---------------------------------------------------------------------------
// Normalized-model search (0/1 costs)
// ---------------------------------------------------------------------------

namespace {

bool lits_hold(const std::vector<Literal>& lits, const std::vector<bool>& env) {
  for (const auto& l : lits)
    if (env[l.bit] != l.positive) return false;
  return true;
}

/// Ground parameter assignments of a normalized action: one-hot per group,
/// both values per free bit. Values are keyed by position in param_bits.
void enumerate_strips_args(const StripsAction& a,
                           const std::function<void(const std::vector<bool>&)>& visit) {
  std::vector<bool> vals(a.param_bits.size(), false);
  std::map<int, size_t> pos;
  for (size_t i = 0; i < a.param_bits.size(); i++) pos[a.param_bits[i]] = i;

  struct Unit {
    std::vector<size_t> positions;
    bool group;
  };
  std::vector<Unit> units;
  {
    std::map<size_t, const std::vector<int>*> group_at;
    for (const auto& g : a.param_groups) group_at[pos.at(g.front())] = &g;
    std::set<size_t> free_pos;
    for (int b : a.free_bits) free_pos.insert(pos.at(b));
    for (size_t i = 0; i < a.param_bits.size(); i++) {
      auto it = group_at.find(i);
      if (it != group_at.end()) {
        Unit u;
        u.group = true;
        for (int b : *it->second) u.positions.push_back(pos.at(b));
        units.push_back(std::move(u));
      } else if (free_pos.count(i)) {
        units.push_back({{i}, false});
      }
    }
  }

  std::function<void(size_t)> rec = [&](size_t u) {
    if (u == units.size()) {
      visit(vals);
      return;
    }
    const Unit& unit = units[u];
    if (!unit.group) {
      for (bool v : {false, true}) {
        vals[unit.positions[0]] = v;
        rec(u + 1);
      }
      return;
    }
    for (size_t i = 0; i < unit.positions.size(); i++) {
      for (size_t j = 0; j < unit.positions.size(); j++) vals[unit.positions[j]] = (j == i);
      rec(u + 1);
    }
  };
  rec(0);
}

}  // namespace

BoolSearchResult bfs_strips(const StripsModel& sm, const SearchLimits& lim) {
  BoolSearchResult res;

  std::vector<bool> env(sm.vars.size(), false);
  for (int b : sm.state_bits) env[b] = sm.init[b];

  struct Node {
    Packed parent;
    int action = -1;
    std::vector<bool> args;
    uint64_t dist = 0;
    bool settled = false;
  };
  std::unordered_map<Packed, Node, PackedHash> seen;
  std::deque<Packed> dq;

  const Packed init = pack(env, sm.state_bits);
  seen[init].dist = 0;
  dq.push_back(init);

  Packed goal_state;
  bool found = false;

  while (!dq.empty()) {
    res.stats.frontier_peak = std::max<uint64_t>(res.stats.frontier_peak, dq.size());
    Packed cur = dq.front();
    dq.pop_front();
    Node& cn = seen.at(cur);
    if (cn.settled) continue;
    cn.settled = true;
    const uint64_t cdist = cn.dist;
    res.stats.expanded++;
    if (res.stats.expanded > lim.max_states) {
      res.cap_exceeded = true;
      return res;
    }
    unpack(cur, sm.state_bits, env);
    if (lits_hold(sm.goal, env)) {
      found = true;
      goal_state = cur;
      break;
    }

    for (size_t ai = 0; ai < sm.actions.size(); ai++) {
      const StripsAction& a = sm.actions[ai];
      const uint64_t cost = a.kind == StripsActionKind::Main ? 1 : 0;
      enumerate_strips_args(a, [&](const std::vector<bool>& args) {
        for (size_t i = 0; i < a.param_bits.size(); i++) env[a.param_bits[i]] = args[i];
        if (!lits_hold(a.pre, env)) return;
        std::map<int, bool> writes;
        bool conflict = false;
        for (const auto& e : a.effects) {
          if (!lits_hold(e.cond, env)) continue;
          auto [it, inserted] = writes.emplace(e.bit, e.value);
          if (!inserted && it->second != e.value) {
            conflict = true;
            break;
          }
        }
        if (conflict) return;
        std::vector<bool> nenv = env;
        for (const auto& [b, v] : writes) nenv[b] = v;
        Packed np = pack(nenv, sm.state_bits);
        auto it = seen.find(np);
        const uint64_t nd = cdist + cost;
        if (it == seen.end() || (!it->second.settled && nd < it->second.dist)) {
          Node& n = seen[np];
          n.parent = cur;
          n.action = static_cast<int>(ai);
          n.args = args;
          n.dist = nd;
          n.settled = false;
          if (cost == 0)
            dq.push_front(np);
          else
            dq.push_back(np);
        }
      });
      // restore parameter bits for the next action
      for (int b : a.param_bits) env[b] = false;
    }
  }

  if (!found) return res;
  res.solved = true;
  std::vector<BoolPlanStep> rev;
  for (Packed at = goal_state; !(at == init);) {
    const Node& n = seen.at(at);
    rev.push_back({n.action, n.args});
    at = n.parent;
  }
  res.plan.assign(rev.rbegin(), rev.rend());
  return res;
}

std::vector<PlanStep> to_plan_steps(const StripsModel& sm, const std::vector<BoolPlanStep>& plan) {
  std::vector<PlanStep> out;
  out.reserve(plan.size());
  for (const auto& s : plan) out.push_back({sm.actions[s.action_index].name, s.args});
  return out;
}

std::vector<SourcePlanStep> bool_plan_to_source(const BoolModel& bm,
                                                const std::vector<BoolPlanStep>& plan) {
  std::vector<SourcePlanStep> out;
  for (const auto& s : plan) {
    const BoolAction& a = bm.actions[s.action_index];
    SourcePlanStep step;
    step.action = a.name;
    size_t at = 0;
    for (const auto& p : a.params) {
      std::vector<bool> bits(s.args.begin() + at, s.args.begin() + at + p.flat.size());
      at += p.flat.size();
      step.args.push_back(decode_leaves(p.type, bits, p.name));
    }
    out.push_back(std::move(step));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationResult validate_source_plan(const SourceModel& lowered,
                                      const std::vector<SourcePlanStep>& plan) {
  SourceState s = initial_state(lowered);
  for (size_t i = 0; i < plan.size(); i++) {
    const Action* a = lowered.find_action(plan[i].action);
    if (!a)
      return {false, static_cast<int>(i), "unknown action " + plan[i].action};
    try {
      s = apply_action(lowered, s, *a, plan[i].args);
    } catch (const EvalError& e) {
      return {false, static_cast<int>(i), e.what()};
    }
  }
  if (!goal_holds(lowered, s))
    return {false, static_cast<int>(plan.size()), "goal not reached"};
  return {};
}

ValidationResult validate_bool_plan(const BoolModel& bm, const std::vector<BoolPlanStep>& plan) {
  std::vector<bool> env(bm.vars.size(), false);
  for (int i = 0; i < bm.num_state_bits; i++) env[i] = bm.init[i];
  for (size_t i = 0; i < plan.size(); i++) {
    const BoolAction& a = bm.actions[plan[i].action_index];
    auto bits = a.all_param_bits();
    if (plan[i].args.size() != bits.size())
      return {false, static_cast<int>(i), "argument count mismatch for " + a.name};
    for (size_t j = 0; j < bits.size(); j++) env[bits[j]] = plan[i].args[j];
    // one-hot groups of every parameter must be respected
    for (const auto& p : a.params)
      for (const auto& g : p.layout.groups) {
        int ones = 0;
        for (size_t pos : g)
          if (env[p.flat[pos]]) ones++;
        if (ones != 1)
          return {false, static_cast<int>(i), "parameter " + p.name + " of " + a.name +
                                                  " is not a one-hot value"};
      }
    if (!eval_formula(a.pre, env))
      return {false, static_cast<int>(i), "precondition of " + a.name + " false"};
    std::map<int, bool> writes;
    for (const auto& e : a.effects) {
      if (!eval_formula(e.cond, env)) continue;
      auto [it, inserted] = writes.emplace(e.bit, e.value);
      if (!inserted && it->second != e.value)
        return {false, static_cast<int>(i), "conflicting writes in " + a.name};
    }
    for (const auto& [b, v] : writes) env[b] = v;
    for (int b : bits) env[b] = false;
  }
  if (!eval_formula(bm.goal, env))
    return {false, static_cast<int>(plan.size()), "goal not reached"};
  return {};
}

ValidationResult validate_strips_plan(const StripsModel& sm, const std::vector<PlanStep>& plan) {
  std::vector<bool> env(sm.vars.size(), false);
  for (int b : sm.state_bits) env[b] = sm.init[b];
  for (size_t i = 0; i < plan.size(); i++) {
    const StripsAction* a = sm.find_action(plan[i].action);
    if (!a) return {false, static_cast<int>(i), "unknown action " + plan[i].action};
    if (plan[i].args.size() != a->param_bits.size())
      return {false, static_cast<int>(i), "argument count mismatch for " + a->name};
    for (size_t j = 0; j < a->param_bits.size(); j++) env[a->param_bits[j]] = plan[i].args[j];
    for (const auto& g : a->param_groups) {
      int ones = 0;
      for (int b : g)
        if (env[b]) ones++;
      if (ones != 1)
        return {false, static_cast<int>(i),
                "parameter bits of " + a->name + " are not a one-hot value"};
    }
    if (!lits_hold(a->pre, env))
      return {false, static_cast<int>(i), "precondition of " + a->name + " false"};
    std::map<int, bool> writes;
    for (const auto& e : a->effects) {
      if (!lits_hold(e.cond, env)) continue;
      auto [it, inserted] = writes.emplace(e.bit, e.value);
      if (!inserted && it->second != e.value)
        return {false, static_cast<int>(i), "conflicting writes in " + a->name};
    }
    for (const auto& [b, v] : writes) env[b] = v;
    for (int b : a->param_bits) env[b] = false;
  }
  if (!lits_hold(sm.goal, env))
    return {false, static_cast<int>(plan.size()), "goal not reached"};
  return {};
}

std::vector<std::vector<bool>> run_strips_plan(const StripsModel& sm,
                                               const std::vector<PlanStep>& plan) {
  std::vector<std::vector<bool>> trace;
  std::vector<bool> env(sm.vars.size(), false);
  for (int b : sm.state_bits) env[b] = sm.init[b];
  trace.push_back(env);
  for (size_t i = 0; i < plan.size(); i++) {
    const StripsAction* a = sm.find_action(plan[i].action);
    if (!a) throw EvalError(EvalErrorKind::Other, "unknown action " + plan[i].action);
    for (size_t j = 0; j < a->param_bits.size(); j++) env[a->param_bits[j]] = plan[i].args[j];
    if (!lits_hold(a->pre, env))
      throw EvalError(EvalErrorKind::PreconditionFailed,
                      "precondition of " + a->name + " false at step " + std::to_string(i));
    std::map<int, bool> writes;
    for (const auto& e : a->effects) {
      if (!lits_hold(e.cond, env)) continue;
      auto [it, inserted] = writes.emplace(e.bit, e.value);
      if (!inserted && it->second != e.value)
        throw EvalError(EvalErrorKind::WriteConflict, "conflicting writes in " + a->name);
    }
    for (const auto& [b, v] : writes) env[b] = v;
    for (int b : a->param_bits) env[b] = false;
    trace.push_back(env);
  }
  return trace;
}

void for_each_reachable_strips(const StripsModel& sm, const SearchLimits& lim,
                               const std::function<void(const std::vector<bool>&)>& visit) {
  std::vector<bool> env(sm.vars.size(), false);
  for (int b : sm.state_bits) env[b] = sm.init[b];

  std::unordered_map<Packed, bool, PackedHash> seen;
  std::deque<Packed> queue;
  const Packed init = pack(env, sm.state_bits);
  seen[init] = true;
  queue.push_back(init);

  while (!queue.empty()) {
    Packed cur = queue.front();
    queue.pop_front();
    if (seen.size() > lim.max_states)
      throw CapError("reachable state count above the cap of " + std::to_string(lim.max_states));
    unpack(cur, sm.state_bits, env);
    visit(env);
    for (const auto& a : sm.actions) {
      enumerate_strips_args(a, [&](const std::vector<bool>& args) {
        for (size_t i = 0; i < a.param_bits.size(); i++) env[a.param_bits[i]] = args[i];
        if (!lits_hold(a.pre, env)) return;
        std::map<int, bool> writes;
        bool conflict = false;
        for (const auto& e : a.effects) {
          if (!lits_hold(e.cond, env)) continue;
          auto [it, inserted] = writes.emplace(e.bit, e.value);
          if (!inserted && it->second != e.value) {
            conflict = true;
            break;
          }
        }
        if (conflict) return;
        std::vector<bool> nenv = env;
        for (const auto& [b, v] : writes) nenv[b] = v;
        Packed np = pack(nenv, sm.state_bits);
        if (!seen.count(np)) {
          seen[np] = true;
          queue.push_back(np);
        }
      });
      for (int b : a.param_bits) env[b] = false;
    }
  }
}

}  // namespace typal
