#pragma once

#include "typal/ast.hpp"

namespace typal {

/// Rewrite a type with records as tuples (fields in lexicographic order) and
/// unions as tuples <tag enum, payload...> (alternatives in declared order,
/// one payload component per alternative).
TypeExpr lower_type(const TypeExpr& t);

/// Lower a checked literal along with its type.
Value lower_value(const TypeExpr& t, const Value& v);

/// Lower a whole typechecked model: types, initial values and expressions.
/// Field accesses become tuple accesses, tag tests become tag-component
/// equalities, union constructors become tuple constructions whose inactive
/// payload slots hold the first domain value of their type. Models without
/// records or unions are returned structurally unchanged.
SourceModel lower_records_unions(const SourceModel& m);

}  // namespace typal
