#include "typal/pretty.hpp"

#include <sstream>

namespace typal {

std::string type_to_string(const TypeExpr& t) {
  std::ostringstream os;
  switch (t.kind) {
    case TypeKind::Bool:
      os << "bool";
      break;
    case TypeKind::Int:
      os << t.lo << ".." << t.hi;
      break;
    case TypeKind::Enum: {
      os << "{";
      for (size_t i = 0; i < t.names.size(); i++) os << (i ? ", " : "") << t.names[i];
      os << "}";
      break;
    }
    case TypeKind::Tuple: {
      os << "<";
      for (size_t i = 0; i < t.args.size(); i++)
        os << (i ? ", " : "") << type_to_string(t.args[i]);
      os << ">";
      break;
    }
    case TypeKind::Record: {
      os << "{";
      for (size_t i = 0; i < t.names.size(); i++)
        os << (i ? ", " : "") << t.names[i] << ": " << type_to_string(t.args[i]);
      os << "}";
      break;
    }
    case TypeKind::Union: {
      os << "[";
      for (size_t i = 0; i < t.names.size(); i++)
        os << (i ? ", " : "") << t.names[i] << ": " << type_to_string(t.args[i]);
      os << "]";
      break;
    }
    case TypeKind::Set:
      os << "set<" << type_to_string(t.elem()) << ">";
      break;
    case TypeKind::Array:
      os << "array<" << type_to_string(t.key()) << ", " << type_to_string(t.value()) << ">";
      break;
    case TypeKind::Named:
      os << t.names[0];
      break;
  }
  return os.str();
}

std::string value_to_string(const Value& v) {
  std::ostringstream os;
  switch (v.kind) {
    case ValueKind::Bool:
      os << (v.b ? "true" : "false");
      break;
    case ValueKind::Int:
      os << v.i;
      break;
    case ValueKind::Enum:
      os << v.name;
      break;
    case ValueKind::Tuple: {
      os << "<";
      for (size_t i = 0; i < v.elems.size(); i++)
        os << (i ? ", " : "") << value_to_string(v.elems[i]);
      os << ">";
      break;
    }
    case ValueKind::Set: {
      os << "{";
      for (size_t i = 0; i < v.elems.size(); i++)
        os << (i ? ", " : "") << value_to_string(v.elems[i]);
      os << "}";
      break;
    }
    case ValueKind::Array: {
      os << "[";
      for (size_t i = 0; i < v.elems.size(); i++)
        os << (i ? ", " : "") << value_to_string(v.elems[i]);
      os << "]";
      break;
    }
    case ValueKind::Record: {
      os << "{";
      for (size_t i = 0; i < v.names.size(); i++)
        os << (i ? ", " : "") << v.names[i] << ": " << value_to_string(v.elems[i]);
      os << "}";
      break;
    }
    case ValueKind::Union:
      os << "[" << v.name << ": " << value_to_string(v.elems[0]) << "]";
      break;
  }
  return os.str();
}

namespace {

// Precedence levels, loosest first; matches the parser.
int prec_of(ExprKind k) {
  switch (k) {
    case ExprKind::Or: return 1;
    case ExprKind::And: return 2;
    case ExprKind::Not: return 3;
    case ExprKind::Eq:
    case ExprKind::Neq:
    case ExprKind::Lt:
    case ExprKind::Leq:
    case ExprKind::Gt:
    case ExprKind::Geq:
    case ExprKind::In:
    case ExprKind::Subseteq: return 4;
    case ExprKind::Add:
    case ExprKind::Sub: return 5;
    case ExprKind::Mul:
    case ExprKind::Div: return 6;
    case ExprKind::Union:
    case ExprKind::Intersect:
    case ExprKind::Diff: return 7;
    default: return 8;  // postfix and primaries
  }
}

const char* op_name(ExprKind k) {
  switch (k) {
    case ExprKind::Or: return "or";
    case ExprKind::And: return "and";
    case ExprKind::Eq: return "eq";
    case ExprKind::Neq: return "neq";
    case ExprKind::Lt: return "lt";
    case ExprKind::Leq: return "leq";
    case ExprKind::Gt: return "gt";
    case ExprKind::Geq: return "geq";
    case ExprKind::In: return "in";
    case ExprKind::Subseteq: return "subseteq";
    case ExprKind::Add: return "add";
    case ExprKind::Sub: return "sub";
    case ExprKind::Mul: return "mul";
    case ExprKind::Div: return "div";
    case ExprKind::Union: return "union";
    case ExprKind::Intersect: return "inter";
    case ExprKind::Diff: return "diff";
    default: return "?";
  }
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec) {
  const int p = prec_of(e.kind);
  const bool need_paren = p < parent_prec;
  if (need_paren) os << "(";
  switch (e.kind) {
    case ExprKind::ConstBool:
      os << (e.bval ? "true" : "false");
      break;
    case ExprKind::ConstInt:
      os << e.ival;
      break;
    case ExprKind::ConstEnum:
      os << e.name;
      break;
    case ExprKind::ConstValue:
      os << value_to_string(e.cval);
      break;
    case ExprKind::Var:
      os << e.name;
      break;
    case ExprKind::Not:
      os << "not ";
      print_expr(os, *e.args[0], p);
      break;
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Eq:
    case ExprKind::Neq:
    case ExprKind::Lt:
    case ExprKind::Leq:
    case ExprKind::Gt:
    case ExprKind::Geq:
    case ExprKind::In:
    case ExprKind::Subseteq:
    case ExprKind::Union:
    case ExprKind::Intersect:
    case ExprKind::Diff: {
      // Comparisons are non-associative; both sides need strictly tighter level.
      const bool nonassoc = p == 4;
      print_expr(os, *e.args[0], nonassoc ? p + 1 : p);
      os << " " << op_name(e.kind) << " ";
      print_expr(os, *e.args[1], p + 1);
      break;
    }
    case ExprKind::SetLiteral: {
      os << "{";
      for (size_t i = 0; i < e.args.size(); i++) {
        if (i) os << ", ";
        print_expr(os, *e.args[i], 0);
      }
      os << "}";
      break;
    }
    case ExprKind::TupleAccess:
      print_expr(os, *e.args[0], p);
      os << "." << e.ival;
      break;
    case ExprKind::FieldAccess:
      print_expr(os, *e.args[0], p);
      os << "." << e.name;
      break;
    case ExprKind::UnionIs:
      print_expr(os, *e.args[0], p);
      os << " is " << e.name;
      break;
    case ExprKind::UnionAs:
      print_expr(os, *e.args[0], p);
      os << " as " << e.name;
      break;
    case ExprKind::UnionMake:
      os << "[" << e.name << ": ";
      print_expr(os, *e.args[0], 0);
      os << "]";
      break;
    case ExprKind::TupleMake: {
      os << "<";
      for (size_t i = 0; i < e.args.size(); i++) {
        if (i) os << ", ";
        print_expr(os, *e.args[i], 0);
      }
      os << ">";
      break;
    }
    case ExprKind::ArrayIndex:
      print_expr(os, *e.args[0], p);
      os << "[";
      print_expr(os, *e.args[1], 0);
      os << "]";
      break;
    case ExprKind::IntCast:
      // Casts are introduced by the typechecker and have no surface form.
      print_expr(os, *e.args[0], parent_prec);
      if (need_paren) os << ")";
      return;
  }
  if (need_paren) os << ")";
}

}  // namespace

std::string expr_to_string(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string print_model(const SourceModel& m) {
  std::ostringstream os;
  for (const auto& td : m.typedefs)
    os << "type " << td.name << " = " << type_to_string(td.type) << ";\n";
  for (const auto& v : m.vars)
    os << "var " << v.name << ": " << type_to_string(v.type) << ";\n";
  for (const auto& in : m.inits)
    os << "init " << in.var << " = " << value_to_string(in.value) << ";\n";
  if (m.goal) os << "goal " << expr_to_string(*m.goal) << ";\n";
  for (const auto& a : m.actions) {
    os << "action " << a.name << "(";
    for (size_t i = 0; i < a.params.size(); i++) {
      if (i) os << ", ";
      os << a.params[i].name << ": " << type_to_string(a.params[i].type);
    }
    os << ")\n  pre " << expr_to_string(*a.pre) << "\n  eff";
    for (const auto& eff : a.effects) {
      os << "\n    ";
      if (eff.cond) os << "when " << expr_to_string(*eff.cond) << " ";
      os << expr_to_string(*eff.target) << " := " << expr_to_string(*eff.value) << ";";
    }
    os << "\nend\n";
  }
  return os.str();
}

}  // namespace typal
