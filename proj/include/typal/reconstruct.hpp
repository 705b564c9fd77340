#pragma once

#include <string>
#include <vector>

#include "typal/pddl.hpp"
#include "typal/search.hpp"
#include "typal/strips.hpp"

namespace typal {

/// Fold auxiliary occurrences into their original actions and decode the
/// gathered parameter bits into typed argument values. Goal-chain actions
/// are dropped. Throws EvalError on broken chains (auxiliaries out of order)
/// or undecodable parameter bits.
std::vector<SourcePlanStep> reconstruct_plan(const PlanFile& plan, const StripsModel& sm,
                                             const ChainMetadata& meta);

std::string format_source_plan(const std::vector<SourcePlanStep>& plan);

std::string meta_to_json(const ChainMetadata& meta);
ChainMetadata meta_from_json(const std::string& text);

}  // namespace typal
