#include "typal/interp.hpp"

#include <algorithm>

#include "typal/domain.hpp"
#include "typal/pretty.hpp"

namespace typal {

SourceState initial_state(const SourceModel& m) {
  SourceState s;
  for (const auto& in : m.inits) s[in.var] = in.value;
  return s;
}

namespace {

Value sort_set(const TypeExpr& elem_t, std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end(), [&](const Value& a, const Value& b) {
    return rank_of(elem_t, a) < rank_of(elem_t, b);
  });
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return Value::set(std::move(elems));
}

bool set_contains(const Value& s, const Value& v) {
  return std::find(s.elems.begin(), s.elems.end(), v) != s.elems.end();
}

/// Check a value against a (lowered) type's value bounds; integer slots are
/// the only place a checked narrowing can fail.
bool fits(const TypeExpr& t, const Value& v) {
  switch (t.kind) {
    case TypeKind::Int:
      return v.i >= t.lo && v.i <= t.hi;
    case TypeKind::Tuple: {
      for (size_t i = 0; i < t.args.size(); i++)
        if (!fits(t.args[i], v.elems[i])) return false;
      return true;
    }
    case TypeKind::Array: {
      for (const auto& e : v.elems)
        if (!fits(t.value(), e)) return false;
      return true;
    }
    default:
      return true;
  }
}

}  // namespace

Value eval_expr(const Expr& e, const SourceState& env) {
  switch (e.kind) {
    case ExprKind::ConstBool:
      return Value::boolean(e.bval);
    case ExprKind::ConstInt:
      return Value::integer(e.ival);
    case ExprKind::ConstEnum:
      return Value::enum_item(e.name);
    case ExprKind::ConstValue:
      return e.cval;
    case ExprKind::Var: {
      auto it = env.find(e.name);
      if (it == env.end())
        throw EvalError(EvalErrorKind::Other, "unbound variable: " + e.name);
      return it->second;
    }
    case ExprKind::Not:
      return Value::boolean(!eval_expr(*e.args[0], env).b);
    case ExprKind::And:
      return Value::boolean(eval_expr(*e.args[0], env).b && eval_expr(*e.args[1], env).b);
    case ExprKind::Or:
      return Value::boolean(eval_expr(*e.args[0], env).b || eval_expr(*e.args[1], env).b);
    case ExprKind::Add:
      return Value::integer(eval_expr(*e.args[0], env).i + eval_expr(*e.args[1], env).i);
    case ExprKind::Sub:
      return Value::integer(eval_expr(*e.args[0], env).i - eval_expr(*e.args[1], env).i);
    case ExprKind::Mul:
      return Value::integer(eval_expr(*e.args[0], env).i * eval_expr(*e.args[1], env).i);
    case ExprKind::Div: {
      const long long a = eval_expr(*e.args[0], env).i;
      const long long b = eval_expr(*e.args[1], env).i;
      if (b == 0 || a % b != 0)
        throw EvalError(EvalErrorKind::InexactDivision,
                        std::to_string(a) + " div " + std::to_string(b) +
                            " has no exact quotient");
      return Value::integer(a / b);
    }
    case ExprKind::Eq:
      return Value::boolean(eval_expr(*e.args[0], env) == eval_expr(*e.args[1], env));
    case ExprKind::Neq:
      return Value::boolean(!(eval_expr(*e.args[0], env) == eval_expr(*e.args[1], env)));
    case ExprKind::Lt:
      return Value::boolean(eval_expr(*e.args[0], env).i < eval_expr(*e.args[1], env).i);
    case ExprKind::Leq:
      return Value::boolean(eval_expr(*e.args[0], env).i <= eval_expr(*e.args[1], env).i);
    case ExprKind::Gt:
      return Value::boolean(eval_expr(*e.args[0], env).i > eval_expr(*e.args[1], env).i);
    case ExprKind::Geq:
      return Value::boolean(eval_expr(*e.args[0], env).i >= eval_expr(*e.args[1], env).i);
    case ExprKind::In:
      return Value::boolean(set_contains(eval_expr(*e.args[1], env), eval_expr(*e.args[0], env)));
    case ExprKind::Subseteq: {
      Value a = eval_expr(*e.args[0], env);
      Value b = eval_expr(*e.args[1], env);
      for (const auto& x : a.elems)
        if (!set_contains(b, x)) return Value::boolean(false);
      return Value::boolean(true);
    }
    case ExprKind::Union: {
      Value a = eval_expr(*e.args[0], env);
      Value b = eval_expr(*e.args[1], env);
      std::vector<Value> elems = a.elems;
      elems.insert(elems.end(), b.elems.begin(), b.elems.end());
      return sort_set(e.type.elem(), std::move(elems));
    }
    case ExprKind::Intersect: {
      Value a = eval_expr(*e.args[0], env);
      Value b = eval_expr(*e.args[1], env);
      std::vector<Value> elems;
      for (const auto& x : a.elems)
        if (set_contains(b, x)) elems.push_back(x);
      return sort_set(e.type.elem(), std::move(elems));
    }
    case ExprKind::Diff: {
      Value a = eval_expr(*e.args[0], env);
      Value b = eval_expr(*e.args[1], env);
      std::vector<Value> elems;
      for (const auto& x : a.elems)
        if (!set_contains(b, x)) elems.push_back(x);
      return sort_set(e.type.elem(), std::move(elems));
    }
    case ExprKind::SetLiteral: {
      std::vector<Value> elems;
      for (const auto& el : e.args) elems.push_back(eval_expr(*el, env));
      return sort_set(e.type.elem(), std::move(elems));
    }
    case ExprKind::TupleAccess:
      return eval_expr(*e.args[0], env).elems[e.ival - 1];
    case ExprKind::TupleMake: {
      std::vector<Value> comps;
      for (const auto& c : e.args) comps.push_back(eval_expr(*c, env));
      return Value::tuple(std::move(comps));
    }
    case ExprKind::FieldAccess: {
      Value rec = eval_expr(*e.args[0], env);
      for (size_t i = 0; i < rec.names.size(); i++)
        if (rec.names[i] == e.name) return rec.elems[i];
      throw EvalError(EvalErrorKind::Other, "record value has no field " + e.name);
    }
    case ExprKind::UnionIs:
      return Value::boolean(eval_expr(*e.args[0], env).name == e.name);
    case ExprKind::UnionAs: {
      Value u = eval_expr(*e.args[0], env);
      if (u.name == e.name) return u.elems[0];
      // Inactive alternative: reads see that slot's first value, matching the
      // lowered layout.
      const TypeExpr& ut = e.args[0]->type;
      for (size_t i = 0; i < ut.names.size(); i++)
        if (ut.names[i] == e.name) return first_value(ut.args[i]);
      throw EvalError(EvalErrorKind::Other, "union value has no tag " + e.name);
    }
    case ExprKind::UnionMake: {
      Value u;
      u.kind = ValueKind::Union;
      u.name = e.name;
      u.elems.push_back(eval_expr(*e.args[0], env));
      return u;
    }
    case ExprKind::ArrayIndex: {
      Value base = eval_expr(*e.args[0], env);
      Value idx = eval_expr(*e.args[1], env);
      const TypeExpr& key = e.args[0]->type.key();
      if (key.kind == TypeKind::Int && (idx.i < key.lo || idx.i > key.hi))
        throw EvalError(EvalErrorKind::RangeViolation,
                        "array index " + std::to_string(idx.i) + " outside key range " +
                            type_to_string(key));
      return base.elems[rank_of(key, idx)];
    }
    case ExprKind::IntCast: {
      Value v = eval_expr(*e.args[0], env);
      if (!fits(e.type, v))
        throw EvalError(EvalErrorKind::RangeViolation,
                        "value " + value_to_string(v) + " not representable in " +
                            type_to_string(e.type));
      return v;
    }
  }
  throw EvalError(EvalErrorKind::Other, "unhandled expression kind");
}

bool eval_condition(const Expr& e, const SourceState& env) { return eval_expr(e, env).b; }

namespace {

struct Write {
  std::string var;
  std::vector<uint64_t> path;  // child index per step down the value tree
  Value value;
};

/// Resolve a reference chain into (variable, path) with indices evaluated in
/// the pre-state.
void resolve_target(const Expr& r, const SourceState& s, std::string& var,
                    std::vector<uint64_t>& path) {
  switch (r.kind) {
    case ExprKind::Var:
      var = r.name;
      return;
    case ExprKind::TupleAccess:
      resolve_target(*r.args[0], s, var, path);
      path.push_back(static_cast<uint64_t>(r.ival - 1));
      return;
    case ExprKind::ArrayIndex: {
      resolve_target(*r.args[0], s, var, path);
      Value idx = eval_expr(*r.args[1], s);
      const TypeExpr& key = r.args[0]->type.key();
      if (key.kind == TypeKind::Int && (idx.i < key.lo || idx.i > key.hi))
        throw EvalError(EvalErrorKind::RangeViolation, "array index outside key range");
      path.push_back(rank_of(key, idx));
      return;
    }
    default:
      throw EvalError(EvalErrorKind::BadReference,
                      "assignment target is not a lowered reference chain");
  }
}

/// Scalar slots of a value subtree, in depth-first order. Sets count as one
/// slot (they are atomic at the reference level).
void flatten_scalars(const Value& v, std::vector<const Value*>& out) {
  if (v.kind == ValueKind::Tuple || v.kind == ValueKind::Array) {
    for (const auto& e : v.elems) flatten_scalars(e, out);
  } else {
    out.push_back(&v);
  }
}

size_t count_scalars(const Value& v) {
  std::vector<const Value*> tmp;
  flatten_scalars(v, tmp);
  return tmp.size();
}

void apply_at(Value& tree, const std::vector<uint64_t>& path, size_t depth, const Value& nv) {
  if (depth == path.size()) {
    tree = nv;
    return;
  }
  apply_at(tree.elems[path[depth]], path, depth + 1, nv);
}

const Value& peek_at(const Value& tree, const std::vector<uint64_t>& path, size_t depth) {
  if (depth == path.size()) return tree;
  return peek_at(tree.elems[path[depth]], path, depth + 1);
}

/// Offset of the slot targeted by `path` in the flattened scalar list of the
/// whole variable value.
size_t scalar_offset(const Value& tree, const std::vector<uint64_t>& path, size_t depth) {
  if (depth == path.size()) return 0;
  size_t off = 0;
  for (uint64_t i = 0; i < path[depth]; i++) off += count_scalars(tree.elems[i]);
  return off + scalar_offset(tree.elems[path[depth]], path, depth + 1);
}

}  // namespace

SourceState apply_action(const SourceModel& lowered, const SourceState& s, const Action& a,
                         const std::vector<Value>& args) {
  SourceState env = s;
  if (args.size() != a.params.size())
    throw EvalError(EvalErrorKind::Other, "wrong number of arguments for " + a.name);
  for (size_t i = 0; i < args.size(); i++) env[a.params[i].name] = args[i];

  if (!eval_condition(*a.pre, env))
    throw EvalError(EvalErrorKind::PreconditionFailed, "precondition of " + a.name + " is false");

  std::vector<Write> writes;
  for (const auto& eff : a.effects) {
    if (eff.cond && !eval_condition(*eff.cond, env)) continue;
    Write w;
    resolve_target(*eff.target, env, w.var, w.path);
    w.value = eval_expr(*eff.value, env);
    writes.push_back(std::move(w));
  }

  // Conflict detection at scalar-slot granularity: the same slot may be
  // written twice only with the same value.
  std::map<std::string, std::map<size_t, const Value*>> pending;
  for (const auto& w : writes) {
    const Value& cur = s.at(w.var);
    const size_t base = scalar_offset(cur, w.path, 0);
    std::vector<const Value*> slots;
    flatten_scalars(w.value, slots);
    auto& seen = pending[w.var];
    for (size_t i = 0; i < slots.size(); i++) {
      auto [it, inserted] = seen.emplace(base + i, slots[i]);
      if (!inserted && !(*it->second == *slots[i]))
        throw EvalError(EvalErrorKind::WriteConflict,
                        "conflicting simultaneous writes in action " + a.name + " (variable " +
                            w.var + ")");
    }
  }

  SourceState out = s;
  for (const auto& w : writes) apply_at(out.at(w.var), w.path, 0, w.value);
  (void)lowered;
  return out;
}

bool goal_holds(const SourceModel& lowered, const SourceState& s) {
  return eval_condition(*lowered.goal, s);
}

}  // namespace typal
