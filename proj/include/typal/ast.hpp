#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace typal {

struct SourcePos {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
};

/// Base for all diagnostics carrying a source position.
struct Error : std::runtime_error {
  SourcePos pos;
  Error(std::string msg, SourcePos p = {}) : std::runtime_error(std::move(msg)), pos(p) {}
};

struct ParseError : Error {
  using Error::Error;
};
struct TypeError : Error {
  using Error::Error;
};
struct LowerError : Error {
  using Error::Error;
};

enum class EvalErrorKind {
  InexactDivision,
  RangeViolation,
  PreconditionFailed,
  WriteConflict,
  ExactlyOneViolation,
  BadReference,
  Other,
};

struct EvalError : Error {
  EvalErrorKind kind;
  EvalError(EvalErrorKind k, std::string msg) : Error(std::move(msg)), kind(k) {}
};

/// Resource-limit violations (domain enumeration, search space).
struct CapError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class TypeKind { Bool, Int, Enum, Tuple, Record, Union, Set, Array, Named };

/// Type expressions of the modeling language. Record/Union/Named disappear
/// after alias resolution + record/union lowering.
struct TypeExpr {
  TypeKind kind = TypeKind::Bool;
  long long lo = 0, hi = 0;        // Int: inclusive bounds
  std::vector<std::string> names;  // Enum items | Record fields | Union tags | Named: {alias}
  std::vector<TypeExpr> args;      // Tuple comps | Record/Union member types | Set: {elem} | Array: {key, value}

  static TypeExpr boolean() { return TypeExpr{}; }
  static TypeExpr intrange(long long lo, long long hi) {
    TypeExpr t;
    t.kind = TypeKind::Int;
    t.lo = lo;
    t.hi = hi;
    return t;
  }
  static TypeExpr enumeration(std::vector<std::string> items) {
    TypeExpr t;
    t.kind = TypeKind::Enum;
    t.names = std::move(items);
    return t;
  }
  static TypeExpr tuple(std::vector<TypeExpr> comps) {
    TypeExpr t;
    t.kind = TypeKind::Tuple;
    t.args = std::move(comps);
    return t;
  }
  static TypeExpr record(std::vector<std::string> fields, std::vector<TypeExpr> types) {
    TypeExpr t;
    t.kind = TypeKind::Record;
    t.names = std::move(fields);
    t.args = std::move(types);
    return t;
  }
  static TypeExpr union_(std::vector<std::string> tags, std::vector<TypeExpr> types) {
    TypeExpr t;
    t.kind = TypeKind::Union;
    t.names = std::move(tags);
    t.args = std::move(types);
    return t;
  }
  static TypeExpr set(TypeExpr elem) {
    TypeExpr t;
    t.kind = TypeKind::Set;
    t.args.push_back(std::move(elem));
    return t;
  }
  static TypeExpr array(TypeExpr key, TypeExpr value) {
    TypeExpr t;
    t.kind = TypeKind::Array;
    t.args.push_back(std::move(key));
    t.args.push_back(std::move(value));
    return t;
  }
  static TypeExpr named(std::string alias) {
    TypeExpr t;
    t.kind = TypeKind::Named;
    t.names.push_back(std::move(alias));
    return t;
  }

  const TypeExpr& key() const { return args[0]; }      // Array
  const TypeExpr& value() const { return args[1]; }    // Array
  const TypeExpr& elem() const { return args[0]; }     // Set

  bool is_scalar() const {
    return kind == TypeKind::Bool || kind == TypeKind::Int || kind == TypeKind::Enum;
  }

  bool operator==(const TypeExpr& o) const {
    return kind == o.kind && lo == o.lo && hi == o.hi && names == o.names && args == o.args;
  }
  bool operator!=(const TypeExpr& o) const { return !(*this == o); }
};

std::string type_to_string(const TypeExpr& t);

// ---------------------------------------------------------------------------
// Literal values
// ---------------------------------------------------------------------------

enum class ValueKind { Bool, Int, Enum, Tuple, Set, Array, Record, Union };

/// A concrete value. Tuple/Array elements are positional; Set elements are
/// kept sorted by domain rank once checked against a type. Record/Union
/// forms exist only before record/union lowering.
struct Value {
  ValueKind kind = ValueKind::Bool;
  bool b = false;
  long long i = 0;
  std::string name;                 // Enum item | Union tag
  std::vector<std::string> names;   // Record field names (as written)
  std::vector<Value> elems;         // Tuple/Set/Array elements | Record field values | Union payload {v}

  static Value boolean(bool v) {
    Value x;
    x.kind = ValueKind::Bool;
    x.b = v;
    return x;
  }
  static Value integer(long long v) {
    Value x;
    x.kind = ValueKind::Int;
    x.i = v;
    return x;
  }
  static Value enum_item(std::string n) {
    Value x;
    x.kind = ValueKind::Enum;
    x.name = std::move(n);
    return x;
  }
  static Value tuple(std::vector<Value> vs) {
    Value x;
    x.kind = ValueKind::Tuple;
    x.elems = std::move(vs);
    return x;
  }
  static Value set(std::vector<Value> vs) {
    Value x;
    x.kind = ValueKind::Set;
    x.elems = std::move(vs);
    return x;
  }
  static Value array(std::vector<Value> vs) {
    Value x;
    x.kind = ValueKind::Array;
    x.elems = std::move(vs);
    return x;
  }

  bool operator==(const Value& o) const {
    return kind == o.kind && b == o.b && i == o.i && name == o.name && names == o.names &&
           elems == o.elems;
  }
  bool operator!=(const Value& o) const { return !(*this == o); }
};

std::string value_to_string(const Value& v);

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
  ConstBool,
  ConstInt,
  ConstEnum,   // bare identifier resolved as an enum item
  ConstValue,  // internal: arbitrary typed constant (union lowering, guards)
  Var,
  Not,
  And,
  Or,
  Add,
  Sub,
  Mul,
  Div,
  Eq,
  Neq,
  Lt,
  Leq,
  Gt,
  Geq,
  In,
  Subseteq,
  Union,
  Intersect,
  Diff,
  SetLiteral,
  TupleAccess,  // .i (1-based)
  FieldAccess,  // .name
  UnionIs,      // is tag
  UnionAs,      // as tag
  UnionMake,    // [tag: e]
  TupleMake,    // internal: produced by union lowering
  ArrayIndex,   // base[e]
  IntCast,      // internal: re-index an integer repr to the annotated range
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  ExprKind kind;
  SourcePos pos;
  std::vector<ExprPtr> args;
  std::string name;   // Var / ConstEnum / FieldAccess / union tag
  long long ival = 0; // ConstInt value | TupleAccess index
  bool bval = false;  // ConstBool
  Value cval;         // ConstValue payload
  TypeExpr type;      // set by the typechecker
  bool typed = false;

  Expr(ExprKind k, SourcePos p = {}) : kind(k), pos(p) {}
};

ExprPtr mk_expr(ExprKind k, SourcePos pos, std::vector<ExprPtr> args = {});
ExprPtr mk_const_bool(bool v, SourcePos pos = {});
ExprPtr mk_const_int(long long v, SourcePos pos = {});
ExprPtr mk_var(std::string name, SourcePos pos = {});

/// True if e is a chain of Var/TupleAccess/FieldAccess/UnionAs/ArrayIndex.
bool is_reference_expr(const Expr& e);

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct TypeDef {
  std::string name;
  TypeExpr type;
  SourcePos pos;
};

struct VarDecl {
  std::string name;
  TypeExpr type;
  SourcePos pos;
};

struct InitDecl {
  std::string var;
  Value value;
  SourcePos pos;
};

struct Param {
  std::string name;
  TypeExpr type;
};

struct ConditionalAssignment {
  ExprPtr cond;    // null means unconditional
  ExprPtr target;  // reference expression
  ExprPtr value;
  SourcePos pos;
};

struct Action {
  std::string name;
  SourcePos pos;
  std::vector<Param> params;
  ExprPtr pre;
  std::vector<ConditionalAssignment> effects;
};

struct SourceModel {
  std::string name;  // derived from the input file stem; "model" by default
  std::vector<TypeDef> typedefs;
  std::vector<VarDecl> vars;
  std::vector<InitDecl> inits;
  ExprPtr goal;
  SourcePos goal_pos;
  std::vector<Action> actions;

  const VarDecl* find_var(const std::string& n) const {
    for (const auto& v : vars)
      if (v.name == n) return &v;
    return nullptr;
  }
  const Action* find_action(const std::string& n) const {
    for (const auto& a : actions)
      if (a.name == n) return &a;
    return nullptr;
  }
};

}  // namespace typal
