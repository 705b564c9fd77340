#include "typal/generator.hpp"

#include <algorithm>
#include <random>

#include "typal/domain.hpp"
#include "typal/parser.hpp"

namespace typal {

namespace {

class Gen {
 public:
  Gen(uint64_t seed, const GeneratorBounds& b) : eng_(seed), b_(b) {}

  SourceModel model() {
    SourceModel m;
    m.name = "random";
    gen_vars(m, b_.max_width);
    const int nact = 1 + (int)pick(b_.max_actions);
    for (int i = 0; i < nact; i++) m.actions.push_back(gen_action(m, i));
    m.goal = gen_goal(m);
    return m;
  }

  ExprCase expr_case(int max_depth, uint64_t env_cap, bool allow_div) {
    allow_div_ = allow_div;
    ExprCase c;
    c.model.name = "exprcase";
    // Variable pool bounded by the environment-space cap.
    const int nvars = 1 + (int)pick(3);
    uint64_t space = 1;
    for (int i = 0; i < nvars; i++) {
      TypeExpr t = gen_scalarish_type();
      const uint64_t d = dom_size(t);
      if (space * d > env_cap) continue;
      space *= d;
      add_var(c.model, t);
    }
    if (c.model.vars.empty()) add_var(c.model, TypeExpr::boolean());
    c.model.goal = mk_const_bool(true);

    switch (pick(10)) {
      case 0:
      case 1:
      case 2: {
        auto [e, lo, hi] = gen_int(c.model, max_depth);
        (void)lo;
        (void)hi;
        c.expr = e;
        break;
      }
      case 3: {
        ExprPtr e = gen_set_expr(c.model, max_depth);
        c.expr = e ? e : gen_bool(c.model, max_depth);
        break;
      }
      default:
        c.expr = gen_bool(c.model, max_depth);
        break;
    }
    return c;
  }

 private:
  uint64_t pick(uint64_t n) { return n == 0 ? 0 : eng_() % n; }
  bool chance(uint64_t pct) { return pick(100) < pct; }

  // -- types and values -----------------------------------------------------

  TypeExpr gen_scalar_type(uint64_t budget) {
    switch (pick(3)) {
      case 0:
        return TypeExpr::boolean();
      case 1: {
        const long long lo = (long long)pick(3) - 1;
        const uint64_t w = 2 + pick(std::max<uint64_t>(1, std::min<uint64_t>(3, budget - 1)));
        return TypeExpr::intrange(lo, lo + (long long)w - 1);
      }
      default: {
        const int n = 2 + (int)pick(2);
        std::vector<std::string> items;
        const int tag = enum_counter_++;
        for (int i = 0; i < n; i++)
          items.push_back("it" + std::to_string(tag) + std::string(1, char('a' + i)));
        return TypeExpr::enumeration(std::move(items));
      }
    }
  }

  TypeExpr gen_type(int depth, uint64_t budget) {
    if (budget < 2 || depth <= 1) return budget >= 2 ? gen_scalar_type(budget) : TypeExpr::boolean();
    switch (pick(b_.records_unions ? 8 : 6)) {
      case 0:
      case 1:
        return gen_scalar_type(budget);
      case 2: {
        TypeExpr a = gen_type(depth - 1, budget / 2);
        TypeExpr bt = gen_type(depth - 1, budget - width_of(a));
        return TypeExpr::tuple({a, bt});
      }
      case 3: {
        TypeExpr elem = gen_scalar_type(std::min<uint64_t>(3, budget));
        if (dom_size(elem) > budget) return TypeExpr::boolean();
        return TypeExpr::set(elem);
      }
      case 4:
      case 5: {
        TypeExpr key = gen_scalar_type(3);
        if (dom_size(key) > 3) key = TypeExpr::intrange(0, 1);
        TypeExpr value = gen_scalar_type(std::max<uint64_t>(2, budget / dom_size(key)));
        if (dom_size(key) * width_of(value) > budget) return gen_scalar_type(budget);
        return TypeExpr::array(key, value);
      }
      case 6: {
        TypeExpr a = gen_scalar_type(budget / 2);
        TypeExpr bt = gen_scalar_type(std::max<uint64_t>(1, budget - width_of(a)));
        return TypeExpr::record({"fa", "fb"}, {a, bt});
      }
      default: {
        TypeExpr a = gen_scalar_type(std::max<uint64_t>(1, (budget - 2) / 2));
        TypeExpr bt = gen_scalar_type(
            std::max<uint64_t>(1, budget >= 2 + width_of(a) ? budget - 2 - width_of(a) : 1));
        if (2 + width_of(a) + width_of(bt) > budget) return gen_scalar_type(budget);
        return TypeExpr::union_({"ta", "tb"}, {a, bt});
      }
    }
  }

  Value gen_value(const TypeExpr& t) {
    switch (t.kind) {
      case TypeKind::Bool:
        return Value::boolean(pick(2) == 1);
      case TypeKind::Int:
        return Value::integer(t.lo + (long long)pick(t.hi - t.lo + 1));
      case TypeKind::Enum:
        return Value::enum_item(t.names[pick(t.names.size())]);
      case TypeKind::Tuple: {
        std::vector<Value> comps;
        for (const auto& c : t.args) comps.push_back(gen_value(c));
        return Value::tuple(std::move(comps));
      }
      case TypeKind::Record: {
        Value v;
        v.kind = ValueKind::Record;
        v.names = t.names;
        for (const auto& c : t.args) v.elems.push_back(gen_value(c));
        return v;
      }
      case TypeKind::Union: {
        Value v;
        v.kind = ValueKind::Union;
        const size_t k = pick(t.names.size());
        v.name = t.names[k];
        v.elems.push_back(gen_value(t.args[k]));
        return v;
      }
      case TypeKind::Set: {
        std::vector<Value> elems;
        for (const auto& c : dom_values(t.elem()))
          if (chance(40)) elems.push_back(c);
        return Value::set(std::move(elems));
      }
      case TypeKind::Array: {
        std::vector<Value> elems;
        for (uint64_t i = 0; i < dom_size(t.key()); i++) elems.push_back(gen_value(t.value()));
        return Value::array(std::move(elems));
      }
      default:
        return Value::boolean(false);
    }
  }

  void add_var(SourceModel& m, TypeExpr t) {
    VarDecl v;
    v.name = "v" + std::to_string(m.vars.size());
    v.type = t;
    m.vars.push_back(v);
    m.inits.push_back({v.name, gen_value(t), {}});
  }

  void gen_vars(SourceModel& m, uint64_t budget) {
    const int n = 1 + (int)pick(b_.max_vars);
    for (int i = 0; i < n && budget >= 1; i++) {
      TypeExpr t = gen_type(b_.max_type_depth, std::max<uint64_t>(2, budget));
      const uint64_t w = width_of(t);
      if (w > budget) {
        if (budget >= 1) {
          add_var(m, TypeExpr::boolean());
          budget -= 1;
        }
        continue;
      }
      add_var(m, t);
      budget -= w;
    }
    if (m.vars.empty()) add_var(m, TypeExpr::boolean());
  }

  TypeExpr gen_scalarish_type() {
    if (chance(25)) {
      TypeExpr elem = gen_scalar_type(3);
      if (dom_size(elem) <= 4) return TypeExpr::set(elem);
    }
    if (chance(20)) {
      TypeExpr key = chance(50) ? TypeExpr::intrange(0, 1) : TypeExpr::boolean();
      return TypeExpr::array(key, gen_scalar_type(3));
    }
    if (chance(20)) return TypeExpr::tuple({gen_scalar_type(3), gen_scalar_type(3)});
    return gen_scalar_type(4);
  }

  // -- expression sources ---------------------------------------------------

  struct Scope {
    const SourceModel* m;
    const std::vector<Param>* params;
  };

  /// Declared names with their types, parameters first.
  std::vector<std::pair<std::string, TypeExpr>> sources(const SourceModel& m,
                                                        const std::vector<Param>* params) {
    std::vector<std::pair<std::string, TypeExpr>> out;
    if (params)
      for (const auto& p : *params) out.push_back({p.name, p.type});
    for (const auto& v : m.vars) out.push_back({v.name, v.type});
    return out;
  }

  /// Access chains reaching a value of scalar-ish type: variables plus one
  /// level of tuple/record/array access.
  std::vector<std::pair<ExprPtr, TypeExpr>> reachable(const SourceModel& m,
                                                      const std::vector<Param>* params) {
    std::vector<std::pair<ExprPtr, TypeExpr>> out;
    for (const auto& [name, t] : sources(m, params)) {
      out.push_back({mk_var(name), t});
      if (t.kind == TypeKind::Tuple) {
        for (size_t i = 0; i < t.args.size(); i++) {
          auto acc = mk_expr(ExprKind::TupleAccess, {}, {mk_var(name)});
          acc->ival = (long long)i + 1;
          out.push_back({acc, t.args[i]});
        }
      } else if (t.kind == TypeKind::Record) {
        for (size_t i = 0; i < t.names.size(); i++) {
          auto acc = mk_expr(ExprKind::FieldAccess, {}, {mk_var(name)});
          acc->name = t.names[i];
          out.push_back({acc, t.args[i]});
        }
      } else if (t.kind == TypeKind::Array && t.key().kind == TypeKind::Int) {
        auto acc = mk_expr(ExprKind::ArrayIndex, {},
                           {mk_var(name), mk_const_int(t.key().lo + (long long)pick(
                                              t.key().hi - t.key().lo + 1))});
        out.push_back({acc, t.value()});
      } else if (t.kind == TypeKind::Union) {
        for (size_t i = 0; i < t.names.size(); i++) {
          auto acc = mk_expr(ExprKind::UnionAs, {}, {mk_var(name)});
          acc->name = t.names[i];
          out.push_back({acc, t.args[i]});
        }
      }
    }
    return out;
  }

  template <typename Pred>
  std::vector<std::pair<ExprPtr, TypeExpr>> reachable_if(const SourceModel& m,
                                                         const std::vector<Param>* params,
                                                         Pred pred) {
    std::vector<std::pair<ExprPtr, TypeExpr>> out;
    for (auto& [e, t] : reachable(m, params))
      if (pred(t)) out.push_back({e, t});
    return out;
  }

  // -- integer expressions with tracked ranges -------------------------------

  struct IntExpr {
    ExprPtr e;
    long long lo, hi;
  };

  IntExpr gen_int(const SourceModel& m, int depth, const std::vector<Param>* params = nullptr) {
    auto leaf = [&]() -> IntExpr {
      auto ints = reachable_if(m, params, [](const TypeExpr& t) { return t.kind == TypeKind::Int; });
      if (!ints.empty() && chance(70)) {
        auto& [e, t] = ints[pick(ints.size())];
        return {e, t.lo, t.hi};
      }
      const long long c = (long long)pick(5) - 1;
      return {mk_const_int(c), c, c};
    };
    if (depth <= 0 || chance(35)) return leaf();

    IntExpr a = gen_int(m, depth - 1, params);
    IntExpr b = gen_int(m, depth - 1, params);
    const int op = (int)pick(allow_div_ ? 4 : 3);
    IntRangeBounds r{};
    ExprKind k;
    switch (op) {
      case 0:
        k = ExprKind::Add;
        r = widen_add(a.lo, a.hi, b.lo, b.hi);
        break;
      case 1:
        k = ExprKind::Sub;
        r = widen_sub(a.lo, a.hi, b.lo, b.hi);
        break;
      case 2:
        k = ExprKind::Mul;
        r = widen_mul(a.lo, a.hi, b.lo, b.hi);
        break;
      default: {
        // Divisor: a small constant guaranteeing at least one exact pair.
        long long c = 1 + (long long)pick(2);
        if (c == 2) {
          bool has_even = !(a.lo == a.hi && (a.lo % 2 != 0));
          if (!has_even) c = 1;
        }
        IntExpr bc{mk_const_int(c), c, c};
        IntRangeBounds rr = widen_div(a.lo, a.hi, c, c);
        if (rr.hi - rr.lo + 1 > 14) return a;
        return {mk_expr(ExprKind::Div, {}, {a.e, bc.e}), rr.lo, rr.hi};
      }
    }
    if (r.hi - r.lo + 1 > 14) return a;  // keep representations narrow
    return {mk_expr(k, {}, {a.e, b.e}), r.lo, r.hi};
  }

  // -- set expressions --------------------------------------------------------

  ExprPtr gen_set_literal(const TypeExpr& set_t) {
    auto lit = mk_expr(ExprKind::SetLiteral, {});
    const auto dom = dom_values(set_t.elem());
    const int n = (int)pick(3);
    for (int i = 0; i < n; i++) {
      const Value& c = dom[pick(dom.size())];
      lit->args.push_back(const_expr_of(c, set_t.elem()));
    }
    return lit;
  }

  /// Set expression checked against set_t; binary operators are anchored on
  /// a same-typed variable so one operand always synthesizes.
  ExprPtr gen_set_of(const SourceModel& m, const TypeExpr& set_t, int depth,
                     const std::vector<Param>* params) {
    auto same = reachable_if(m, params, [&](const TypeExpr& t) { return t == set_t; });
    if (depth <= 0 || same.empty() || chance(40)) {
      if (!same.empty() && chance(60)) return same[pick(same.size())].first;
      return gen_set_literal(set_t);
    }
    ExprKind k = pick(3) == 0   ? ExprKind::Union
                 : pick(2) == 0 ? ExprKind::Intersect
                                : ExprKind::Diff;
    ExprPtr anchor = same[pick(same.size())].first;
    ExprPtr other = gen_set_of(m, set_t, depth - 1, params);
    return mk_expr(k, {}, {anchor, other});
  }

  ExprPtr gen_set_expr(const SourceModel& m, int depth,
                       const std::vector<Param>* params = nullptr) {
    auto sets = reachable_if(m, params, [](const TypeExpr& t) { return t.kind == TypeKind::Set; });
    if (sets.empty()) return nullptr;
    auto& [anchor, st] = sets[pick(sets.size())];
    if (chance(30)) return anchor;
    ExprKind k = pick(3) == 0   ? ExprKind::Union
                 : pick(2) == 0 ? ExprKind::Intersect
                                : ExprKind::Diff;
    return mk_expr(k, {}, {anchor, gen_set_of(m, st, depth - 1, params)});
  }

  /// A surface-syntax expression denoting a scalar constant.
  ExprPtr const_expr_of(const Value& v, const TypeExpr& t) {
    switch (t.kind) {
      case TypeKind::Bool:
        return mk_const_bool(v.b);
      case TypeKind::Int:
        return mk_const_int(v.i);
      case TypeKind::Enum: {
        auto e = std::make_shared<Expr>(ExprKind::ConstEnum, SourcePos{});
        e->name = v.name;
        return e;
      }
      default:
        return mk_const_bool(false);  // unreachable for generated element types
    }
  }

  // -- boolean expressions -----------------------------------------------------

  ExprPtr gen_cmp(const SourceModel& m, const std::vector<Param>* params) {
    // Collect the comparison forms that are expressible with the declared
    // variables and pick among them.
    std::vector<int> options{0};  // integer comparison always works
    auto enums = reachable_if(m, params, [](const TypeExpr& t) { return t.kind == TypeKind::Enum; });
    auto sets = reachable_if(m, params, [](const TypeExpr& t) { return t.kind == TypeKind::Set; });
    auto unions =
        reachable_if(m, params, [](const TypeExpr& t) { return t.kind == TypeKind::Union; });
    auto bools = reachable_if(m, params, [](const TypeExpr& t) { return t.kind == TypeKind::Bool; });
    if (!enums.empty()) options.push_back(1);
    if (!sets.empty()) options.push_back(2);
    if (!sets.empty()) options.push_back(3);
    if (!unions.empty()) options.push_back(4);
    if (!bools.empty()) options.push_back(5);

    switch (options[pick(options.size())]) {
      case 1: {
        auto& [e, t] = enums[pick(enums.size())];
        if (chance(50)) {
          auto c = const_expr_of(Value::enum_item(t.names[pick(t.names.size())]), t);
          return mk_expr(chance(80) ? ExprKind::Eq : ExprKind::Neq, {}, {e, c});
        }
        auto others = reachable_if(m, params, [&](const TypeExpr& u) { return u == t; });
        auto& [e2, t2] = others[pick(others.size())];
        (void)t2;
        return mk_expr(ExprKind::Eq, {}, {e, e2});
      }
      case 2: {
        auto& [se, st] = sets[pick(sets.size())];
        auto elem_dom = dom_values(st.elem());
        ExprPtr elem = chance(60)
                           ? const_expr_of(elem_dom[pick(elem_dom.size())], st.elem())
                           : [&]() -> ExprPtr {
                               auto cands = reachable_if(m, params, [&](const TypeExpr& u) {
                                 return u == st.elem();
                               });
                               if (cands.empty())
                                 return const_expr_of(elem_dom[pick(elem_dom.size())], st.elem());
                               return cands[pick(cands.size())].first;
                             }();
        return mk_expr(ExprKind::In, {}, {elem, se});
      }
      case 3: {
        auto& [se, st] = sets[pick(sets.size())];
        return mk_expr(ExprKind::Subseteq, {}, {gen_set_of(m, st, 1, params), se});
      }
      case 4: {
        auto& [ue, ut] = unions[pick(unions.size())];
        auto node = mk_expr(ExprKind::UnionIs, {}, {ue});
        node->name = ut.names[pick(ut.names.size())];
        return node;
      }
      case 5:
        return bools[pick(bools.size())].first;
      default: {
        IntExpr a = gen_int(m, 1, params);
        IntExpr b = gen_int(m, 1, params);
        static const ExprKind ks[6] = {ExprKind::Eq,  ExprKind::Neq, ExprKind::Lt,
                                       ExprKind::Leq, ExprKind::Gt,  ExprKind::Geq};
        return mk_expr(ks[pick(6)], {}, {a.e, b.e});
      }
    }
  }

  ExprPtr gen_bool(const SourceModel& m, int depth, const std::vector<Param>* params = nullptr) {
    if (depth <= 0) {
      if (chance(10)) return mk_const_bool(pick(2) == 1);
      return gen_cmp(m, params);
    }
    switch (pick(10)) {
      case 0:
      case 1:
      case 2:
        return mk_expr(ExprKind::And, {}, {gen_bool(m, depth - 1, params),
                                           gen_bool(m, depth - 1, params)});
      case 3:
      case 4:
      case 5:
        return mk_expr(ExprKind::Or, {},
                       {gen_bool(m, depth - 1, params), gen_bool(m, depth - 1, params)});
      case 6:
        return mk_expr(ExprKind::Not, {}, {gen_bool(m, depth - 1, params)});
      default:
        return gen_cmp(m, params);
    }
  }

  // -- actions -----------------------------------------------------------------

  /// Value expression for an assignment target of type T; synthesized ranges
  /// stay inside integer targets so the reference semantics never range-fault.
  ExprPtr gen_value_expr(const SourceModel& m, const TypeExpr& t,
                         const std::vector<Param>* params, int depth) {
    switch (t.kind) {
      case TypeKind::Bool:
        return gen_bool(m, depth, params);
      case TypeKind::Int: {
        auto contained = reachable_if(m, params, [&](const TypeExpr& u) {
          return u.kind == TypeKind::Int && u.lo >= t.lo && u.hi <= t.hi;
        });
        if (!contained.empty() && chance(55)) return contained[pick(contained.size())].first;
        if (!contained.empty() && chance(40)) {
          auto& [e, u] = contained[pick(contained.size())];
          const long long cmin = t.lo - u.lo, cmax = t.hi - u.hi;
          if (cmin <= cmax) {
            const long long c = cmin + (long long)pick(cmax - cmin + 1);
            if (c != 0) return mk_expr(ExprKind::Add, {}, {e, mk_const_int(c)});
            return e;
          }
        }
        return mk_const_int(t.lo + (long long)pick(t.hi - t.lo + 1));
      }
      case TypeKind::Enum: {
        auto same = reachable_if(m, params, [&](const TypeExpr& u) { return u == t; });
        if (!same.empty() && chance(50)) return same[pick(same.size())].first;
        return const_expr_of(Value::enum_item(t.names[pick(t.names.size())]), t);
      }
      case TypeKind::Set:
        return gen_set_of(m, t, depth, params);
      case TypeKind::Union: {
        auto same = reachable_if(m, params, [&](const TypeExpr& u) { return u == t; });
        if (!same.empty() && chance(50)) return same[pick(same.size())].first;
        const size_t k = pick(t.names.size());
        auto mk = mk_expr(ExprKind::UnionMake, {});
        mk->name = t.names[k];
        mk->args.push_back(gen_value_expr(m, t.args[k], params, depth - 1));
        return mk;
      }
      default: {
        auto same = reachable_if(m, params, [&](const TypeExpr& u) { return u == t; });
        if (!same.empty()) return same[pick(same.size())].first;
        return nullptr;  // no source for this exact type
      }
    }
  }

  /// A reference chain into a variable, ending at a slot for which a value
  /// expression can be produced.
  std::pair<ExprPtr, TypeExpr> gen_target(const SourceModel& m,
                                          const std::vector<Param>* params) {
    const VarDecl& v = m.vars[pick(m.vars.size())];
    ExprPtr ref = mk_var(v.name);
    TypeExpr t = v.type;
    for (int guard = 0; guard < 4; guard++) {
      if (t.kind == TypeKind::Tuple && chance(70)) {
        const size_t i = pick(t.args.size());
        auto acc = mk_expr(ExprKind::TupleAccess, {}, {ref});
        acc->ival = (long long)i + 1;
        ref = acc;
        t = t.args[i];
        continue;
      }
      if (t.kind == TypeKind::Record && chance(70)) {
        const size_t i = pick(t.names.size());
        auto acc = mk_expr(ExprKind::FieldAccess, {}, {ref});
        acc->name = t.names[i];
        ref = acc;
        t = t.args[i];
        continue;
      }
      if (t.kind == TypeKind::Array && chance(75)) {
        ExprPtr idx;
        if (t.key().kind == TypeKind::Int) {
          auto ints = reachable_if(m, params, [&](const TypeExpr& u) {
            return u.kind == TypeKind::Int && u.lo >= t.key().lo && u.hi <= t.key().hi;
          });
          idx = (!ints.empty() && chance(60))
                    ? ints[pick(ints.size())].first
                    : mk_const_int(t.key().lo + (long long)pick(t.key().hi - t.key().lo + 1));
        } else {
          auto keys =
              reachable_if(m, params, [&](const TypeExpr& u) { return u == t.key(); });
          if (!keys.empty() && chance(60)) {
            idx = keys[pick(keys.size())].first;
          } else if (t.key().kind == TypeKind::Bool || t.key().kind == TypeKind::Enum) {
            auto dom = dom_values(t.key());
            idx = const_expr_of(dom[pick(dom.size())], t.key());
          } else {
            break;  // no expressible index; assign the whole array
          }
        }
        ref = mk_expr(ExprKind::ArrayIndex, {}, {ref, idx});
        t = t.value();
        continue;
      }
      if (t.kind == TypeKind::Union && chance(40)) {
        const size_t i = pick(t.names.size());
        auto acc = mk_expr(ExprKind::UnionAs, {}, {ref});
        acc->name = t.names[i];
        ref = acc;
        t = t.args[i];
        continue;
      }
      break;
    }
    return {ref, t};
  }

  Action gen_action(const SourceModel& m, int index) {
    Action a;
    a.name = "act" + std::to_string(index);
    const int nparams = (int)pick(3);
    for (int i = 0; i < nparams; i++) {
      Param p;
      p.name = "q" + std::to_string(i);
      if (chance(25)) {
        TypeExpr elem = gen_scalar_type(3);
        p.type = dom_size(elem) <= 3 ? TypeExpr::set(elem) : gen_scalar_type(4);
      } else {
        p.type = gen_scalar_type(4);
      }
      a.params.push_back(std::move(p));
    }
    a.pre = chance(20) ? mk_const_bool(true) : gen_bool(m, 1 + (int)pick(2), &a.params);

    const int neff = 1 + (int)pick(3);
    for (int i = 0; i < neff; i++) {
      for (int attempt = 0; attempt < 6; attempt++) {
        auto [target, t] = gen_target(m, &a.params);
        ExprPtr value = gen_value_expr(m, t, &a.params, 2);
        if (!value) continue;
        ConditionalAssignment eff;
        if (chance(40)) eff.cond = gen_bool(m, 1, &a.params);
        eff.target = target;
        eff.value = value;
        a.effects.push_back(std::move(eff));
        break;
      }
    }
    if (a.effects.empty()) {
      // Guaranteed fallback: rewrite the first variable with its own value.
      ConditionalAssignment eff;
      eff.target = mk_var(m.vars[0].name);
      eff.value = mk_var(m.vars[0].name);
      a.effects.push_back(std::move(eff));
    }
    return a;
  }

  ExprPtr gen_goal(const SourceModel& m) {
    auto atomic = [&]() -> ExprPtr {
      auto scalars = reachable_if(m, nullptr, [](const TypeExpr& t) { return t.is_scalar(); });
      if (scalars.empty()) return gen_cmp(m, nullptr);
      auto& [e, t] = scalars[pick(scalars.size())];
      switch (t.kind) {
        case TypeKind::Bool:
          return chance(50) ? e : mk_expr(ExprKind::Not, {}, {e});
        case TypeKind::Int:
          return mk_expr(chance(70) ? ExprKind::Eq : ExprKind::Leq, {},
                         {e, mk_const_int(t.lo + (long long)pick(t.hi - t.lo + 1))});
        default:
          return mk_expr(ExprKind::Eq, {},
                         {e, const_expr_of(Value::enum_item(t.names[pick(t.names.size())]), t)});
      }
    };
    if (chance(55)) return atomic();
    if (chance(50)) return mk_expr(ExprKind::And, {}, {atomic(), atomic()});
    return gen_bool(m, 2);
  }

  std::mt19937_64 eng_;
  GeneratorBounds b_;
  int enum_counter_ = 0;
  bool allow_div_ = false;
};

}  // namespace

SourceModel random_model(uint64_t seed, const GeneratorBounds& bounds) {
  Gen g(seed, bounds);
  SourceModel m = g.model();
  typecheck(m);
  return m;
}

ExprCase random_expr_case(uint64_t seed, int max_depth, uint64_t env_space_cap, bool allow_div) {
  GeneratorBounds b;
  b.records_unions = false;
  Gen g(seed, b);
  ExprCase c = g.expr_case(max_depth, env_space_cap, allow_div);
  typecheck_expr(c.model, c.expr);
  return c;
}

}  // namespace typal
