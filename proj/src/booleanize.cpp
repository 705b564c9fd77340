#include "typal/booleanize.hpp"

#include <algorithm>
#include <sstream>

#include "typal/pretty.hpp"

namespace typal {

namespace {

void leaves_rec(const Repr& r, std::vector<FormulaPtr>& out) {
  if (r.leaf) {
    out.push_back(r.f);
    return;
  }
  for (const auto& k : r.kids) leaves_rec(k, out);
}

}  // namespace

std::vector<FormulaPtr> repr_leaves(const Repr& r) {
  std::vector<FormulaPtr> out;
  leaves_rec(r, out);
  return out;
}

std::string shape_of(const Repr& r) {
  if (r.leaf) return "*";
  std::string out = "(";
  for (const auto& k : r.kids) out += shape_of(k);
  return out + ")";
}

std::string shape_of_type(const TypeExpr& t) {
  switch (t.kind) {
    case TypeKind::Bool:
      return "*";
    case TypeKind::Int:
    case TypeKind::Enum: {
      std::string out = "(";
      for (uint64_t i = 0; i < width_of(t); i++) out += "*";
      return out + ")";
    }
    case TypeKind::Tuple: {
      std::string out = "(";
      for (const auto& c : t.args) out += shape_of_type(c);
      return out + ")";
    }
    case TypeKind::Set: {
      std::string out = "(";
      for (uint64_t i = 0; i < dom_size(t.elem()); i++) out += "*";
      return out + ")";
    }
    case TypeKind::Array: {
      std::string out = "(";
      const std::string v = shape_of_type(t.value());
      for (uint64_t i = 0; i < dom_size(t.key()); i++) out += v;
      return out + ")";
    }
    default:
      throw LowerError("shape of an unlowered type: " + type_to_string(t));
  }
}

namespace {

Repr from_leaves_rec(const TypeExpr& t, const std::vector<FormulaPtr>& leaves, size_t& at) {
  switch (t.kind) {
    case TypeKind::Bool:
      return Repr::leaf_of(leaves[at++]);
    case TypeKind::Int:
    case TypeKind::Enum: {
      std::vector<Repr> kids;
      for (uint64_t i = 0; i < width_of(t); i++) kids.push_back(Repr::leaf_of(leaves[at++]));
      return Repr::node(std::move(kids));
    }
    case TypeKind::Tuple: {
      std::vector<Repr> kids;
      for (const auto& c : t.args) kids.push_back(from_leaves_rec(c, leaves, at));
      return Repr::node(std::move(kids));
    }
    case TypeKind::Set: {
      std::vector<Repr> kids;
      for (uint64_t i = 0; i < dom_size(t.elem()); i++)
        kids.push_back(Repr::leaf_of(leaves[at++]));
      return Repr::node(std::move(kids));
    }
    case TypeKind::Array: {
      std::vector<Repr> kids;
      for (uint64_t i = 0; i < dom_size(t.key()); i++)
        kids.push_back(from_leaves_rec(t.value(), leaves, at));
      return Repr::node(std::move(kids));
    }
    default:
      throw LowerError("representation of an unlowered type");
  }
}

std::string int_token(long long v) {
  return v < 0 ? "m" + std::to_string(-v) : std::to_string(v);
}

Repr encode_decl_rec(const std::string& prefix, const TypeExpr& t, VarTable& vars,
                     const std::string& key_prefix) {
  switch (t.kind) {
    case TypeKind::Bool:
      return Repr::leaf_of(f_atom(vars.add(key_prefix + prefix, prefix)));
    case TypeKind::Int: {
      std::vector<Repr> kids;
      for (long long v = t.lo; v <= t.hi; v++) {
        const std::string n = prefix + "_" + int_token(v);
        kids.push_back(Repr::leaf_of(f_atom(vars.add(key_prefix + n, n))));
      }
      return Repr::node(std::move(kids));
    }
    case TypeKind::Enum: {
      std::vector<Repr> kids;
      for (const auto& item : t.names) {
        const std::string n = prefix + "_" + item;
        kids.push_back(Repr::leaf_of(f_atom(vars.add(key_prefix + n, n))));
      }
      return Repr::node(std::move(kids));
    }
    case TypeKind::Tuple: {
      std::vector<Repr> kids;
      for (size_t i = 0; i < t.args.size(); i++)
        kids.push_back(encode_decl_rec(prefix + "_" + std::to_string(i + 1), t.args[i], vars,
                                       key_prefix));
      return Repr::node(std::move(kids));
    }
    case TypeKind::Set: {
      std::vector<Repr> kids;
      const uint64_t k = dom_size(t.elem());
      for (uint64_t i = 0; i < k; i++) {
        const std::string n = prefix + "_" + std::to_string(i);
        kids.push_back(Repr::leaf_of(f_atom(vars.add(key_prefix + n, n))));
      }
      return Repr::node(std::move(kids));
    }
    case TypeKind::Array: {
      std::vector<Repr> kids;
      const uint64_t k = dom_size(t.key());
      for (uint64_t i = 0; i < k; i++)
        kids.push_back(encode_decl_rec(prefix + "_" + std::to_string(i), t.value(), vars,
                                       key_prefix));
      return Repr::node(std::move(kids));
    }
    default:
      throw LowerError("encode_decl on an unlowered type: " + type_to_string(t));
  }
}

}  // namespace

Repr repr_from_leaves(const TypeExpr& t, const std::vector<FormulaPtr>& leaves) {
  size_t at = 0;
  Repr r = from_leaves_rec(t, leaves, at);
  if (at != leaves.size())
    throw LowerError("leaf count does not match the type shape");
  return r;
}

Repr const_repr(const TypeExpr& t, const Value& v) {
  std::vector<bool> bits = encode_literal(t, v);
  std::vector<FormulaPtr> leaves;
  leaves.reserve(bits.size());
  for (bool b : bits) leaves.push_back(b ? f_true() : f_false());
  return repr_from_leaves(t, leaves);
}

Repr encode_decl(const std::string& name, const TypeExpr& t, VarTable& vars,
                 const std::string& key_prefix) {
  return encode_decl_rec(name, t, vars, key_prefix);
}

Repr fix_op(const std::vector<Repr>& elems, const std::vector<FormulaPtr>& guards) {
  if (elems.empty() || elems.size() != guards.size())
    throw LowerError("fix needs one guard per element");
  const std::string shape = shape_of(elems[0]);
  for (const auto& e : elems)
    if (shape_of(e) != shape) throw LowerError("fix elements have mismatching shapes");

  if (elems[0].leaf) {
    std::vector<FormulaPtr> parts;
    parts.reserve(elems.size());
    for (size_t i = 0; i < elems.size(); i++) parts.push_back(f_and2(elems[i].f, guards[i]));
    return Repr::leaf_of(f_or(std::move(parts)));
  }
  std::vector<Repr> kids;
  const size_t n = elems[0].kids.size();
  for (size_t j = 0; j < n; j++) {
    std::vector<Repr> sub;
    sub.reserve(elems.size());
    for (const auto& e : elems) sub.push_back(e.kids[j]);
    kids.push_back(fix_op(sub, guards));
  }
  return Repr::node(std::move(kids));
}

FormulaPtr eq_repr(const Repr& a, const TypeExpr& ta, const Repr& b, const TypeExpr& tb) {
  if (ta.kind == TypeKind::Int && tb.kind == TypeKind::Int) {
    const long long lo = std::max(ta.lo, tb.lo);
    const long long hi = std::min(ta.hi, tb.hi);
    std::vector<FormulaPtr> parts;
    for (long long j = lo; j <= hi; j++)
      parts.push_back(f_and2(a.kids[j - ta.lo].f, b.kids[j - tb.lo].f));
    return f_or(std::move(parts));  // empty overlap folds to false
  }
  switch (ta.kind) {
    case TypeKind::Bool:
      return f_iff(a.f, b.f);
    case TypeKind::Enum: {
      std::vector<FormulaPtr> parts;
      for (size_t j = 0; j < ta.names.size(); j++)
        parts.push_back(f_and2(a.kids[j].f, b.kids[j].f));
      return f_or(std::move(parts));
    }
    case TypeKind::Tuple: {
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < ta.args.size(); i++)
        parts.push_back(eq_repr(a.kids[i], ta.args[i], b.kids[i], tb.args[i]));
      return f_and(std::move(parts));
    }
    case TypeKind::Set: {
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < a.kids.size(); i++) parts.push_back(f_iff(a.kids[i].f, b.kids[i].f));
      return f_and(std::move(parts));
    }
    case TypeKind::Array: {
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < a.kids.size(); i++)
        parts.push_back(eq_repr(a.kids[i], ta.value(), b.kids[i], tb.value()));
      return f_and(std::move(parts));
    }
    default:
      throw LowerError("equality on an unlowered type");
  }
}

FormulaPtr eq_const(const Repr& r, const TypeExpr& t, const Value& c) {
  switch (t.kind) {
    case TypeKind::Bool:
      return c.b ? r.f : f_not(r.f);
    case TypeKind::Int:
      if (c.i < t.lo || c.i > t.hi) return f_false();
      return r.kids[c.i - t.lo].f;
    case TypeKind::Enum: {
      for (size_t i = 0; i < t.names.size(); i++)
        if (t.names[i] == c.name) return r.kids[i].f;
      return f_false();
    }
    case TypeKind::Tuple: {
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < t.args.size(); i++)
        parts.push_back(eq_const(r.kids[i], t.args[i], c.elems[i]));
      return f_and(std::move(parts));
    }
    case TypeKind::Set: {
      std::vector<bool> bits(dom_size(t.elem()), false);
      for (const auto& e : c.elems) bits[rank_of(t.elem(), e)] = true;
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < bits.size(); i++)
        parts.push_back(bits[i] ? r.kids[i].f : f_not(r.kids[i].f));
      return f_and(std::move(parts));
    }
    case TypeKind::Array: {
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < r.kids.size(); i++)
        parts.push_back(eq_const(r.kids[i], t.value(), c.elems[i]));
      return f_and(std::move(parts));
    }
    default:
      throw LowerError("constant equality on an unlowered type");
  }
}

namespace {

Repr coerce_repr(const Repr& r, const TypeExpr& from, const TypeExpr& to) {
  if (from == to) return r;
  if (from.kind == TypeKind::Int && to.kind == TypeKind::Int) {
    std::vector<Repr> kids;
    for (long long v = to.lo; v <= to.hi; v++)
      kids.push_back(v >= from.lo && v <= from.hi ? r.kids[v - from.lo]
                                                  : Repr::leaf_of(f_false()));
    return Repr::node(std::move(kids));
  }
  if (from.kind == TypeKind::Tuple && to.kind == TypeKind::Tuple) {
    std::vector<Repr> kids;
    for (size_t i = 0; i < to.args.size(); i++)
      kids.push_back(coerce_repr(r.kids[i], from.args[i], to.args[i]));
    return Repr::node(std::move(kids));
  }
  if (from.kind == TypeKind::Array && to.kind == TypeKind::Array) {
    std::vector<Repr> kids;
    for (size_t i = 0; i < r.kids.size(); i++)
      kids.push_back(coerce_repr(r.kids[i], from.value(), to.value()));
    return Repr::node(std::move(kids));
  }
  throw LowerError("cannot reshape " + type_to_string(from) + " into " + type_to_string(to));
}

/// Result-indexed convolutions of the unary arithmetic translations. Each
/// result position collects the operand index pairs that produce its value.
Repr arith_repr(ExprKind op, const Repr& a, const TypeExpr& ta, const Repr& b,
                const TypeExpr& tb, const TypeExpr& tr) {
  std::vector<Repr> kids;
  for (long long v = tr.lo; v <= tr.hi; v++) {
    std::vector<FormulaPtr> parts;
    switch (op) {
      case ExprKind::Add:
        for (long long j = ta.lo; j <= ta.hi; j++) {
          const long long k = v - j;
          if (k >= tb.lo && k <= tb.hi)
            parts.push_back(f_and2(a.kids[j - ta.lo].f, b.kids[k - tb.lo].f));
        }
        break;
      case ExprKind::Sub:
        for (long long j = ta.lo; j <= ta.hi; j++) {
          const long long k = j - v;
          if (k >= tb.lo && k <= tb.hi)
            parts.push_back(f_and2(a.kids[j - ta.lo].f, b.kids[k - tb.lo].f));
        }
        break;
      case ExprKind::Mul:
        for (long long j = ta.lo; j <= ta.hi; j++)
          for (long long k = tb.lo; k <= tb.hi; k++)
            if (j * k == v) parts.push_back(f_and2(a.kids[j - ta.lo].f, b.kids[k - tb.lo].f));
        break;
      case ExprKind::Div:
        // Exact quotients only: j div k = v iff j = v*k with k != 0.
        for (long long k = tb.lo; k <= tb.hi; k++) {
          if (k == 0) continue;
          const long long j = v * k;
          if (j >= ta.lo && j <= ta.hi)
            parts.push_back(f_and2(a.kids[j - ta.lo].f, b.kids[k - tb.lo].f));
        }
        break;
      default:
        throw LowerError("not an arithmetic operator");
    }
    kids.push_back(Repr::leaf_of(f_or(std::move(parts))));
  }
  return Repr::node(std::move(kids));
}

FormulaPtr lt_formula(const Repr& a, const TypeExpr& ta, const Repr& b, const TypeExpr& tb) {
  std::vector<FormulaPtr> parts;
  for (long long j1 = ta.lo; j1 <= ta.hi; j1++)
    for (long long j2 = std::max(j1 + 1, tb.lo); j2 <= tb.hi; j2++)
      parts.push_back(f_and2(a.kids[j1 - ta.lo].f, b.kids[j2 - tb.lo].f));
  return f_or(std::move(parts));
}

}  // namespace

Repr translate_expr(const Expr& e, const TranslateCtx& ctx) {
  if (!e.typed) throw LowerError("translating an untyped expression");
  switch (e.kind) {
    case ExprKind::ConstBool:
      return Repr::leaf_of(e.bval ? f_true() : f_false());
    case ExprKind::ConstInt:
      return const_repr(e.type, Value::integer(e.ival));
    case ExprKind::ConstEnum:
      return const_repr(e.type, Value::enum_item(e.name));
    case ExprKind::ConstValue:
      return const_repr(e.type, e.cval);
    case ExprKind::Var: {
      auto it = ctx.env->find(e.name);
      if (it == ctx.env->end()) throw LowerError("no representation for variable " + e.name);
      return it->second;
    }
    case ExprKind::Not:
      return Repr::leaf_of(f_not(translate_expr(*e.args[0], ctx).f));
    case ExprKind::And:
      return Repr::leaf_of(
          f_and2(translate_expr(*e.args[0], ctx).f, translate_expr(*e.args[1], ctx).f));
    case ExprKind::Or:
      return Repr::leaf_of(
          f_or2(translate_expr(*e.args[0], ctx).f, translate_expr(*e.args[1], ctx).f));
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      Repr a = translate_expr(*e.args[0], ctx);
      Repr b = translate_expr(*e.args[1], ctx);
      return arith_repr(e.kind, a, e.args[0]->type, b, e.args[1]->type, e.type);
    }
    case ExprKind::Eq:
      return Repr::leaf_of(eq_repr(translate_expr(*e.args[0], ctx), e.args[0]->type,
                                   translate_expr(*e.args[1], ctx), e.args[1]->type));
    case ExprKind::Neq:
      return Repr::leaf_of(f_not(eq_repr(translate_expr(*e.args[0], ctx), e.args[0]->type,
                                         translate_expr(*e.args[1], ctx), e.args[1]->type)));
    case ExprKind::Lt:
      return Repr::leaf_of(lt_formula(translate_expr(*e.args[0], ctx), e.args[0]->type,
                                      translate_expr(*e.args[1], ctx), e.args[1]->type));
    case ExprKind::Leq: {
      Repr a = translate_expr(*e.args[0], ctx);
      Repr b = translate_expr(*e.args[1], ctx);
      return Repr::leaf_of(f_or2(lt_formula(a, e.args[0]->type, b, e.args[1]->type),
                                 eq_repr(a, e.args[0]->type, b, e.args[1]->type)));
    }
    case ExprKind::Gt:
      return Repr::leaf_of(lt_formula(translate_expr(*e.args[1], ctx), e.args[1]->type,
                                      translate_expr(*e.args[0], ctx), e.args[0]->type));
    case ExprKind::Geq: {
      Repr a = translate_expr(*e.args[0], ctx);
      Repr b = translate_expr(*e.args[1], ctx);
      return Repr::leaf_of(f_or2(lt_formula(b, e.args[1]->type, a, e.args[0]->type),
                                 eq_repr(b, e.args[1]->type, a, e.args[0]->type)));
    }
    case ExprKind::In: {
      Repr elem = translate_expr(*e.args[0], ctx);
      Repr set = translate_expr(*e.args[1], ctx);
      const TypeExpr& et = e.args[1]->type.elem();
      auto dom = dom_values(et, ctx.domain_cap);
      std::vector<Repr> elems;
      std::vector<FormulaPtr> guards;
      for (size_t i = 0; i < dom.size(); i++) {
        elems.push_back(set.kids[i]);
        guards.push_back(eq_const(elem, e.args[0]->type, dom[i]));
      }
      return fix_op(elems, guards);
    }
    case ExprKind::Subseteq: {
      Repr a = translate_expr(*e.args[0], ctx);
      Repr b = translate_expr(*e.args[1], ctx);
      std::vector<FormulaPtr> parts;
      for (size_t i = 0; i < a.kids.size(); i++)
        parts.push_back(f_or2(f_not(a.kids[i].f), b.kids[i].f));
      return Repr::leaf_of(f_and(std::move(parts)));
    }
    case ExprKind::Union:
    case ExprKind::Intersect:
    case ExprKind::Diff: {
      Repr a = translate_expr(*e.args[0], ctx);
      Repr b = translate_expr(*e.args[1], ctx);
      std::vector<Repr> kids;
      for (size_t i = 0; i < a.kids.size(); i++) {
        FormulaPtr l;
        if (e.kind == ExprKind::Union)
          l = f_or2(a.kids[i].f, b.kids[i].f);
        else if (e.kind == ExprKind::Intersect)
          l = f_and2(a.kids[i].f, b.kids[i].f);
        else
          l = f_and2(a.kids[i].f, f_not(b.kids[i].f));
        kids.push_back(Repr::leaf_of(std::move(l)));
      }
      return Repr::node(std::move(kids));
    }
    case ExprKind::SetLiteral: {
      const TypeExpr& et = e.type.elem();
      auto dom = dom_values(et, ctx.domain_cap);
      std::vector<Repr> elems;
      elems.reserve(e.args.size());
      for (const auto& el : e.args) elems.push_back(translate_expr(*el, ctx));
      std::vector<Repr> kids;
      for (const auto& c : dom) {
        std::vector<FormulaPtr> parts;
        for (size_t i = 0; i < e.args.size(); i++)
          parts.push_back(eq_const(elems[i], e.args[i]->type, c));
        kids.push_back(Repr::leaf_of(f_or(std::move(parts))));
      }
      return Repr::node(std::move(kids));
    }
    case ExprKind::TupleAccess:
      return translate_expr(*e.args[0], ctx).kids[e.ival - 1];
    case ExprKind::TupleMake: {
      std::vector<Repr> kids;
      for (const auto& c : e.args) kids.push_back(translate_expr(*c, ctx));
      return Repr::node(std::move(kids));
    }
    case ExprKind::ArrayIndex: {
      Repr base = translate_expr(*e.args[0], ctx);
      Repr idx = translate_expr(*e.args[1], ctx);
      const TypeExpr& key = e.args[0]->type.key();
      auto dom = dom_values(key, ctx.domain_cap);
      std::vector<FormulaPtr> guards;
      guards.reserve(dom.size());
      for (const auto& c : dom) guards.push_back(eq_const(idx, e.args[1]->type, c));
      return fix_op(base.kids, guards);
    }
    case ExprKind::IntCast:
      return coerce_repr(translate_expr(*e.args[0], ctx), e.args[0]->type, e.type);
    case ExprKind::FieldAccess:
    case ExprKind::UnionIs:
    case ExprKind::UnionAs:
    case ExprKind::UnionMake:
      throw LowerError("record/union expression survived lowering");
  }
  throw LowerError("unhandled expression kind");
}

std::vector<GuardedRef> resolve_refs(const Expr& r, const TranslateCtx& ctx) {
  switch (r.kind) {
    case ExprKind::Var: {
      auto it = ctx.env->find(r.name);
      if (it == ctx.env->end()) throw LowerError("no representation for variable " + r.name);
      return {GuardedRef{it->second, f_true()}};
    }
    case ExprKind::TupleAccess: {
      auto base = resolve_refs(*r.args[0], ctx);
      std::vector<GuardedRef> out;
      for (auto& g : base) out.push_back({g.target.kids[r.ival - 1], g.guard});
      return out;
    }
    case ExprKind::ArrayIndex: {
      auto base = resolve_refs(*r.args[0], ctx);
      Repr idx = translate_expr(*r.args[1], ctx);
      const TypeExpr& key = r.args[0]->type.key();
      auto dom = dom_values(key, ctx.domain_cap);
      std::vector<GuardedRef> out;
      for (auto& g : base) {
        for (size_t i = 0; i < dom.size(); i++) {
          FormulaPtr w = eq_const(idx, r.args[1]->type, dom[i]);
          FormulaPtr guard = f_and2(g.guard, std::move(w));
          if (is_false(guard)) continue;
          out.push_back({g.target.kids[i], std::move(guard)});
        }
      }
      return out;
    }
    default:
      throw LowerError("not a reference expression");
  }
}

std::vector<BoolEffect> booleanize_assignment(const ExprPtr& cond, const Expr& target,
                                              const Expr& value, const TranslateCtx& ctx) {
  FormulaPtr c = cond ? translate_expr(*cond, ctx).f : f_true();
  std::vector<BoolEffect> out;
  if (is_false(c)) return out;
  Repr val = translate_expr(value, ctx);
  for (const auto& ref : resolve_refs(target, ctx)) {
    std::vector<FormulaPtr> tleaves = repr_leaves(ref.target);
    std::vector<FormulaPtr> vleaves = repr_leaves(val);
    if (tleaves.size() != vleaves.size())
      throw LowerError("assignment target and value have mismatching shapes");
    for (size_t i = 0; i < tleaves.size(); i++) {
      if (tleaves[i]->kind != FKind::Atom)
        throw LowerError("assignment target leaf is not a state bit");
      const int bit = tleaves[i]->var;
      FormulaPtr add = f_and({c, ref.guard, vleaves[i]});
      if (!is_false(add)) out.push_back({std::move(add), bit, true});
      FormulaPtr del = f_and({c, ref.guard, f_not(vleaves[i])});
      if (!is_false(del)) out.push_back({std::move(del), bit, false});
    }
  }
  return out;
}

BoolModel booleanize_model(const SourceModel& lowered, uint64_t domain_cap) {
  BoolModel bm;
  bm.domain_cap = domain_cap;

  std::map<std::string, Repr> env;
  for (const auto& v : lowered.vars) {
    Repr r = encode_decl(v.name, v.type, bm.vars);
    bm.var_order.push_back(v.name);
    bm.var_type[v.name] = v.type;
    std::vector<int> bits;
    for (const auto& l : repr_leaves(r)) bits.push_back(l->var);
    SlotLayout layout = slot_layout(v.type);
    for (const auto& g : layout.groups) {
      std::vector<int> group;
      for (size_t pos : g) group.push_back(bits[pos]);
      bm.exactly_one_groups.push_back(std::move(group));
    }
    bm.var_bits[v.name] = std::move(bits);
    bm.var_repr[v.name] = r;
    env[v.name] = std::move(r);
  }
  bm.num_state_bits = bm.vars.size();

  bm.init.assign(bm.num_state_bits, false);
  for (const auto& in : lowered.inits) {
    const TypeExpr& t = bm.var_type.at(in.var);
    std::vector<bool> bits = encode_literal(t, in.value);
    const auto& ids = bm.var_bits.at(in.var);
    for (size_t i = 0; i < bits.size(); i++) bm.init[ids[i]] = bits[i];
  }

  TranslateCtx ctx{&env, domain_cap};
  bm.goal = translate_expr(*lowered.goal, ctx).f;

  for (const auto& a : lowered.actions) {
    BoolAction ba;
    ba.name = a.name;
    std::map<std::string, Repr> aenv = env;
    for (const auto& p : a.params) {
      BoolParam bp;
      bp.name = p.name;
      bp.type = p.type;
      bp.bits = encode_decl(p.name, p.type, bm.vars, a.name + "::");
      for (const auto& l : repr_leaves(bp.bits)) bp.flat.push_back(l->var);
      bp.layout = slot_layout(p.type);
      aenv[p.name] = bp.bits;
      ba.params.push_back(std::move(bp));
    }
    TranslateCtx actx{&aenv, domain_cap};
    ba.pre = translate_expr(*a.pre, actx).f;
    for (const auto& eff : a.effects) {
      auto es = booleanize_assignment(eff.cond, *eff.target, *eff.value, actx);
      ba.effects.insert(ba.effects.end(), es.begin(), es.end());
    }
    bm.actions.push_back(std::move(ba));
  }
  return bm;
}

}  // namespace typal
