#include "typal/lower_types.hpp"

#include <algorithm>
#include <numeric>

#include "typal/domain.hpp"

namespace typal {

namespace {

/// Indices of record fields in lexicographic order.
std::vector<size_t> sorted_field_order(const TypeExpr& rec) {
  std::vector<size_t> idx(rec.names.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return rec.names[a] < rec.names[b]; });
  return idx;
}

size_t field_position(const TypeExpr& rec, const std::string& field) {
  auto order = sorted_field_order(rec);
  for (size_t i = 0; i < order.size(); i++)
    if (rec.names[order[i]] == field) return i;
  throw LowerError("unknown record field: " + field);
}

size_t tag_position(const TypeExpr& uni, const std::string& tag) {
  for (size_t i = 0; i < uni.names.size(); i++)
    if (uni.names[i] == tag) return i;
  throw LowerError("unknown union tag: " + tag);
}

}  // namespace

TypeExpr lower_type(const TypeExpr& t) {
  switch (t.kind) {
    case TypeKind::Record: {
      std::vector<TypeExpr> comps;
      for (size_t i : sorted_field_order(t)) comps.push_back(lower_type(t.args[i]));
      return TypeExpr::tuple(std::move(comps));
    }
    case TypeKind::Union: {
      std::vector<TypeExpr> comps;
      comps.push_back(TypeExpr::enumeration(t.names));
      for (const auto& a : t.args) comps.push_back(lower_type(a));
      return TypeExpr::tuple(std::move(comps));
    }
    case TypeKind::Named:
      throw LowerError("cannot lower an unresolved type name: " + t.names[0]);
    default: {
      TypeExpr out = t;
      for (auto& a : out.args) a = lower_type(a);
      return out;
    }
  }
}

Value lower_value(const TypeExpr& t, const Value& v) {
  switch (t.kind) {
    case TypeKind::Bool:
    case TypeKind::Int:
    case TypeKind::Enum:
      return v;
    case TypeKind::Tuple: {
      std::vector<Value> comps;
      for (size_t i = 0; i < t.args.size(); i++)
        comps.push_back(lower_value(t.args[i], v.elems[i]));
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Record: {
      // check_literal normalized the value to declared field order.
      std::vector<Value> comps;
      for (size_t i : sorted_field_order(t)) comps.push_back(lower_value(t.args[i], v.elems[i]));
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Union: {
      const size_t k = tag_position(t, v.name);
      std::vector<Value> comps;
      comps.push_back(Value::enum_item(v.name));
      for (size_t i = 0; i < t.args.size(); i++) {
        TypeExpr alt = lower_type(t.args[i]);
        comps.push_back(i == k ? lower_value(t.args[i], v.elems[0]) : first_value(alt));
      }
      return Value::tuple(std::move(comps));
    }
    case TypeKind::Set: {
      TypeExpr elem = lower_type(t.elem());
      std::vector<Value> elems;
      for (const auto& e : v.elems) elems.push_back(lower_value(t.elem(), e));
      std::sort(elems.begin(), elems.end(), [&](const Value& a, const Value& b) {
        return rank_of(elem, a) < rank_of(elem, b);
      });
      return Value::set(std::move(elems));
    }
    case TypeKind::Array: {
      std::vector<Value> elems;
      for (const auto& e : v.elems) elems.push_back(lower_value(t.value(), e));
      return Value::array(std::move(elems));
    }
    case TypeKind::Named:
      throw LowerError("cannot lower a value of an unresolved type name");
  }
  return v;
}

namespace {

ExprPtr lower_expr(const ExprPtr& e) {
  const TypeExpr orig_type = e->type;
  auto lowered_args = [&]() {
    std::vector<ExprPtr> out;
    out.reserve(e->args.size());
    for (const auto& a : e->args) out.push_back(lower_expr(a));
    return out;
  };

  switch (e->kind) {
    case ExprKind::FieldAccess: {
      const TypeExpr& rec = e->args[0]->type;
      auto node = mk_expr(ExprKind::TupleAccess, e->pos, {lower_expr(e->args[0])});
      node->ival = static_cast<long long>(field_position(rec, e->name)) + 1;
      node->type = lower_type(orig_type);
      node->typed = true;
      return node;
    }
    case ExprKind::UnionIs: {
      const TypeExpr& uni = e->args[0]->type;
      auto tagcomp = mk_expr(ExprKind::TupleAccess, e->pos, {lower_expr(e->args[0])});
      tagcomp->ival = 1;
      tagcomp->type = TypeExpr::enumeration(uni.names);
      tagcomp->typed = true;
      auto item = std::make_shared<Expr>(ExprKind::ConstEnum, e->pos);
      item->name = e->name;
      item->type = tagcomp->type;
      item->typed = true;
      auto node = mk_expr(ExprKind::Eq, e->pos, {tagcomp, item});
      node->type = TypeExpr::boolean();
      node->typed = true;
      return node;
    }
    case ExprKind::UnionAs: {
      const TypeExpr& uni = e->args[0]->type;
      auto node = mk_expr(ExprKind::TupleAccess, e->pos, {lower_expr(e->args[0])});
      node->ival = static_cast<long long>(tag_position(uni, e->name)) + 2;
      node->type = lower_type(orig_type);
      node->typed = true;
      return node;
    }
    case ExprKind::UnionMake: {
      const TypeExpr& uni = orig_type;
      const size_t k = tag_position(uni, e->name);
      auto node = mk_expr(ExprKind::TupleMake, e->pos);
      auto item = std::make_shared<Expr>(ExprKind::ConstEnum, e->pos);
      item->name = e->name;
      item->type = TypeExpr::enumeration(uni.names);
      item->typed = true;
      node->args.push_back(item);
      for (size_t i = 0; i < uni.args.size(); i++) {
        if (i == k) {
          node->args.push_back(lower_expr(e->args[0]));
        } else {
          TypeExpr alt = lower_type(uni.args[i]);
          auto fill = std::make_shared<Expr>(ExprKind::ConstValue, e->pos);
          fill->cval = first_value(alt);
          fill->type = alt;
          fill->typed = true;
          node->args.push_back(fill);
        }
      }
      node->type = lower_type(uni);
      node->typed = true;
      return node;
    }
    case ExprKind::ConstValue: {
      auto node = std::make_shared<Expr>(*e);
      node->cval = lower_value(orig_type, e->cval);
      node->type = lower_type(orig_type);
      return node;
    }
    default: {
      auto node = std::make_shared<Expr>(*e);
      node->args = lowered_args();
      node->type = lower_type(orig_type);
      return node;
    }
  }
}

}  // namespace

SourceModel lower_records_unions(const SourceModel& m) {
  SourceModel out;
  out.name = m.name;
  for (const auto& td : m.typedefs)
    out.typedefs.push_back({td.name, td.type, td.pos});
  for (const auto& v : m.vars) out.vars.push_back({v.name, lower_type(v.type), v.pos});
  for (const auto& in : m.inits) {
    const VarDecl* vd = m.find_var(in.var);
    out.inits.push_back({in.var, lower_value(vd->type, in.value), in.pos});
  }
  out.goal = lower_expr(m.goal);
  out.goal_pos = m.goal_pos;
  for (const auto& a : m.actions) {
    Action la;
    la.name = a.name;
    la.pos = a.pos;
    for (const auto& p : a.params) la.params.push_back({p.name, lower_type(p.type)});
    la.pre = lower_expr(a.pre);
    for (const auto& eff : a.effects) {
      ConditionalAssignment e;
      e.cond = eff.cond ? lower_expr(eff.cond) : nullptr;
      e.target = lower_expr(eff.target);
      e.value = lower_expr(eff.value);
      e.pos = eff.pos;
      la.effects.push_back(std::move(e));
    }
    out.actions.push_back(std::move(la));
  }
  return out;
}

}  // namespace typal
