#pragma once

#include "typal/ast.hpp"
#include "typal/domain.hpp"

namespace typal {

struct CheckOptions {
  uint64_t domain_cap = kDefaultDomainCap;
};

/// Interval results of the arithmetic widening rules. Division enumerates
/// exact integer quotients with a nonzero divisor only.
struct IntRangeBounds {
  long long lo, hi;
};
IntRangeBounds widen_add(long long n1, long long m1, long long n2, long long m2);
IntRangeBounds widen_sub(long long n1, long long m1, long long n2, long long m2);
IntRangeBounds widen_mul(long long n1, long long m1, long long n2, long long m2);
/// Throws TypeError when no exact quotient pair exists.
IntRangeBounds widen_div(long long n1, long long m1, long long n2, long long m2,
                         SourcePos pos = {});

/// Annotate every expression with its type, resolve type aliases, check
/// declarations/initializers/effects, and insert range casts where an
/// integer expression meets a differently-ranged slot. Mutates the model.
/// Throws TypeError / CapError.
void typecheck(SourceModel& m, const CheckOptions& opts = {});

/// Typecheck a standalone expression against a model's declarations (no
/// action parameters in scope). Returns the annotated type.
TypeExpr typecheck_expr(SourceModel& m, ExprPtr& e, const CheckOptions& opts = {});

}  // namespace typal
