#pragma once

#include <map>
#include <string>
#include <vector>

#include "typal/ast.hpp"

namespace typal {

/// Source-level state: every declared variable bound to a canonical value.
using SourceState = std::map<std::string, Value>;

SourceState initial_state(const SourceModel& m);

/// Direct evaluation of a typechecked expression. Arithmetic is exact;
/// division is defined only for exact quotients with a nonzero divisor and
/// raises EvalError(InexactDivision) otherwise. Range casts check that the
/// value is representable in the target range (RangeViolation).
Value eval_expr(const Expr& e, const SourceState& env);

bool eval_condition(const Expr& e, const SourceState& env);

/// Apply one action occurrence: binds arguments, requires the precondition,
/// evaluates all effect conditions in the pre-state and performs the enabled
/// assignments simultaneously. Two writes of different values to one scalar
/// slot raise EvalError(WriteConflict). Targets must be lowered references
/// (variable / tuple access / array index chains).
SourceState apply_action(const SourceModel& lowered, const SourceState& s, const Action& a,
                         const std::vector<Value>& args);

bool goal_holds(const SourceModel& lowered, const SourceState& s);

}  // namespace typal
