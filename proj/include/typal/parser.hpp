#pragma once

#include <string_view>

#include "typal/ast.hpp"

namespace typal {

/// Parse a whole model file. No type resolution is performed; every node
/// carries its source position. Throws ParseError with line/column and the
/// expected-token set.
SourceModel parse_domain(std::string_view text, std::string model_name = "model");

/// Parse a single type expression (used by metadata loading and tests).
TypeExpr parse_type_text(std::string_view text);

/// Parse a single literal value.
Value parse_value_text(std::string_view text);

}  // namespace typal
