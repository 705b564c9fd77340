#pragma once

#include <cstdint>

#include "typal/ast.hpp"
#include "typal/typecheck.hpp"

namespace typal {

struct GeneratorBounds {
  int max_vars = 4;
  int max_actions = 5;
  uint64_t max_width = 16;  // total state bits
  int max_type_depth = 3;
  bool records_unions = true;
};

/// Reproducible well-typed random model. The same seed yields the same model
/// on every run and platform. Division is never emitted (its partial
/// semantics are exercised at expression level instead).
SourceModel random_model(uint64_t seed, const GeneratorBounds& bounds = {});

/// A random typed expression over a small variable pool, packaged with the
/// declarations it needs. The environment space (product of the variable
/// domains) stays within env_space_cap.
struct ExprCase {
  SourceModel model;  // variable declarations + trivial goal, no actions
  ExprPtr expr;       // typechecked against the model
};
ExprCase random_expr_case(uint64_t seed, int max_depth = 4, uint64_t env_space_cap = 1 << 14,
                          bool allow_div = true);

/// Typecheck a standalone expression against a model's declarations.
TypeExpr typecheck_expr(SourceModel& m, ExprPtr& e, const CheckOptions& opts = {});

}  // namespace typal
