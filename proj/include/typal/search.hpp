#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "typal/booleanize.hpp"
#include "typal/interp.hpp"
#include "typal/pddl.hpp"
#include "typal/strips.hpp"

namespace typal {

struct SearchLimits {
  uint64_t max_states = 1'000'000;
};

struct SearchStats {
  uint64_t expanded = 0;
  uint64_t frontier_peak = 0;
};

struct SourcePlanStep {
  std::string action;
  std::vector<Value> args;
};

struct SourceSearchResult {
  bool solved = false;
  bool cap_exceeded = false;
  std::vector<SourcePlanStep> plan;
  SearchStats stats;
};

/// Uniform-cost breadth-first search over the source semantics; parameters
/// ground over their value domains. Deterministic tie-breaking follows
/// declaration order, then domain order.
SourceSearchResult bfs_source(const SourceModel& lowered, const SearchLimits& lim = {},
                              uint64_t domain_cap = kDefaultDomainCap);

struct BoolPlanStep {
  int action_index;
  std::vector<bool> args;  // values of the action's parameter bits, flat order
};

struct BoolSearchResult {
  bool solved = false;
  bool cap_exceeded = false;
  std::vector<BoolPlanStep> plan;
  SearchStats stats;
};

/// BFS over the Booleanized model. Ground instances are generated slot-wise
/// (one-hot per scalar slot, free choice per independent bit) with
/// three-valued precondition pruning; the enumeration is complete, so the
/// search is exact.
BoolSearchResult bfs_bool(const BoolModel& bm, const SearchLimits& lim = {});

/// 0/1-cost search over the normalized model: auxiliary and goal-chain
/// actions cost 0, original actions cost 1, so "shortest" counts original
/// actions and reconstructed plan lengths match the source optimum.
BoolSearchResult bfs_strips(const StripsModel& sm, const SearchLimits& lim = {});

std::vector<PlanStep> to_plan_steps(const StripsModel& sm, const std::vector<BoolPlanStep>& plan);

/// Decode a Boolean-level plan into source-level actions with typed
/// argument values.
std::vector<SourcePlanStep> bool_plan_to_source(const BoolModel& bm,
                                                const std::vector<BoolPlanStep>& plan);

struct ValidationResult {
  bool ok = true;
  int failing_step = -1;  // -1: no step failed (or plan empty); goal failures use steps.size()
  std::string reason;
};

ValidationResult validate_source_plan(const SourceModel& lowered,
                                      const std::vector<SourcePlanStep>& plan);
ValidationResult validate_bool_plan(const BoolModel& bm, const std::vector<BoolPlanStep>& plan);
ValidationResult validate_strips_plan(const StripsModel& sm, const std::vector<PlanStep>& plan);

/// Execute a plan over the normalized model, returning the full variable
/// environments after each step (initial state first). Throws EvalError on
/// failure.
std::vector<std::vector<bool>> run_strips_plan(const StripsModel& sm,
                                               const std::vector<PlanStep>& plan);

/// Enumerate every reachable state of the normalized model (goal ignored),
/// calling visit(env) once per state. Throws CapError above the limit.
void for_each_reachable_strips(const StripsModel& sm, const SearchLimits& lim,
                               const std::function<void(const std::vector<bool>&)>& visit);

}  // namespace typal
