#pragma once

#include <string>

#include "typal/ast.hpp"

namespace typal {

std::string expr_to_string(const Expr& e);

/// Render a model back into concrete syntax. parse(print(parse(x))) is a
/// fixpoint on ASTs for surface models.
std::string print_model(const SourceModel& m);

}  // namespace typal
