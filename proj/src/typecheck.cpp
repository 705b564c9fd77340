#include "typal/typecheck.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "typal/pretty.hpp"

namespace typal {

IntRangeBounds widen_add(long long n1, long long m1, long long n2, long long m2) {
  return {n1 + n2, m1 + m2};
}

IntRangeBounds widen_sub(long long n1, long long m1, long long n2, long long m2) {
  return {n1 - m2, m1 - n2};
}

IntRangeBounds widen_mul(long long n1, long long m1, long long n2, long long m2) {
  const long long ps[4] = {n1 * n2, n1 * m2, m1 * n2, m1 * m2};
  return {*std::min_element(ps, ps + 4), *std::max_element(ps, ps + 4)};
}

IntRangeBounds widen_div(long long n1, long long m1, long long n2, long long m2, SourcePos pos) {
  // Exact quotients q with q*k in [n1,m1] for some nonzero k in [n2,m2].
  bool any = false;
  long long lo = 0, hi = 0;
  for (long long k = n2; k <= m2; k++) {
    if (k == 0) continue;
    // q*k in [n1,m1]  <=>  q in [ceil(n1/k), floor(m1/k)] for k>0, flipped for k<0
    auto floor_div = [](long long a, long long b) {
      long long q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) q--;
      return q;
    };
    auto ceil_div = [&](long long a, long long b) { return -floor_div(-a, b); };
    long long qlo, qhi;
    if (k > 0) {
      qlo = ceil_div(n1, k);
      qhi = floor_div(m1, k);
    } else {
      qlo = ceil_div(m1, k);
      qhi = floor_div(n1, k);
    }
    if (qlo > qhi) continue;
    if (!any) {
      lo = qlo;
      hi = qhi;
      any = true;
    } else {
      lo = std::min(lo, qlo);
      hi = std::max(hi, qhi);
    }
  }
  if (!any)
    throw TypeError("division never defined on these ranges (" + std::to_string(n1) + ".." +
                        std::to_string(m1) + " div " + std::to_string(n2) + ".." +
                        std::to_string(m2) + ")",
                    pos);
  return {lo, hi};
}

namespace {

class Checker {
 public:
  Checker(SourceModel& m, const CheckOptions& opts) : m_(m), opts_(opts) {}

  TypeExpr run_expr(ExprPtr& e) {
    resolve_aliases();
    check_decls();
    return synth(e);
  }

  void run() {
    resolve_aliases();
    check_decls();
    check_inits();

    if (!m_.goal) throw TypeError("model has no goal declaration");
    check_bool(m_.goal);

    std::set<std::string> action_names;
    for (auto& a : m_.actions) {
      if (!action_names.insert(a.name).second)
        throw TypeError("duplicate action name: " + a.name, a.pos);
      check_action(a);
    }
  }

 private:
  // -- types ----------------------------------------------------------------

  void resolve_aliases() {
    for (const auto& td : m_.typedefs) {
      if (aliases_.count(td.name))
        throw TypeError("duplicate type name: " + td.name, td.pos);
      aliases_[td.name] = td.type;
    }
    for (auto& td : m_.typedefs) {
      std::set<std::string> visiting;
      resolved_[td.name] = resolve_type(td.type, visiting, td.pos);
    }
  }

  TypeExpr resolve_type(const TypeExpr& t, std::set<std::string>& visiting, SourcePos pos) {
    if (t.kind == TypeKind::Named) {
      const std::string& n = t.names[0];
      auto done = resolved_.find(n);
      if (done != resolved_.end()) return done->second;
      auto it = aliases_.find(n);
      if (it == aliases_.end()) throw TypeError("unknown type name: " + n, pos);
      if (!visiting.insert(n).second)
        throw TypeError("recursive type alias: " + n, pos);
      TypeExpr r = resolve_type(it->second, visiting, pos);
      visiting.erase(n);
      resolved_[n] = r;
      return r;
    }
    TypeExpr out = t;
    for (auto& a : out.args) a = resolve_type(a, visiting, pos);
    validate_type(out, pos);
    return out;
  }

  TypeExpr resolve(const TypeExpr& t, SourcePos pos) {
    std::set<std::string> visiting;
    return resolve_type(t, visiting, pos);
  }

  void validate_type(const TypeExpr& t, SourcePos pos) {
    switch (t.kind) {
      case TypeKind::Int:
        if (t.lo > t.hi)
          throw TypeError("empty integer range " + std::to_string(t.lo) + ".." +
                              std::to_string(t.hi),
                          pos);
        break;
      case TypeKind::Enum: {
        if (t.names.empty()) throw TypeError("empty enum", pos);
        std::set<std::string> seen;
        for (const auto& n : t.names)
          if (!seen.insert(n).second) throw TypeError("duplicate enum item: " + n, pos);
        break;
      }
      case TypeKind::Record:
      case TypeKind::Union: {
        std::set<std::string> seen;
        for (const auto& n : t.names)
          if (!seen.insert(n).second)
            throw TypeError("duplicate member name: " + n, pos);
        break;
      }
      case TypeKind::Tuple:
        if (t.args.empty()) throw TypeError("empty tuple type", pos);
        break;
      default:
        break;
    }
  }

  void require_width(const TypeExpr& t, SourcePos pos) {
    if (width_of(t) > opts_.domain_cap)
      throw TypeError("representation of " + type_to_string(t) + " is wider than the cap of " +
                          std::to_string(opts_.domain_cap) + " bits",
                      pos);
  }

  // -- declarations ---------------------------------------------------------

  void check_decls() {
    for (auto& v : m_.vars) {
      if (vars_.count(v.name)) throw TypeError("duplicate variable: " + v.name, v.pos);
      v.type = resolve(v.type, v.pos);
      require_width(v.type, v.pos);
      vars_[v.name] = v.type;
    }
  }

  void check_inits() {
    std::set<std::string> seen;
    for (auto& in : m_.inits) {
      auto it = vars_.find(in.var);
      if (it == vars_.end())
        throw TypeError("init for unknown variable: " + in.var, in.pos);
      if (!seen.insert(in.var).second)
        throw TypeError("duplicate init for variable: " + in.var, in.pos);
      in.value = check_literal(it->second, in.value, in.pos);
    }
    for (const auto& v : m_.vars)
      if (!seen.count(v.name))
        throw TypeError("variable " + v.name + " has no init value", v.pos);
  }

  void check_action(Action& a) {
    params_.clear();
    for (auto& p : a.params) {
      if (vars_.count(p.name))
        throw TypeError("parameter " + p.name + " shadows a state variable", a.pos);
      if (params_.count(p.name))
        throw TypeError("duplicate parameter: " + p.name, a.pos);
      p.type = resolve(p.type, a.pos);
      require_width(p.type, a.pos);
      params_[p.name] = p.type;
    }
    check_bool(a.pre);
    for (auto& eff : a.effects) {
      if (eff.cond) check_bool(eff.cond);
      TypeExpr target_t = synth(eff.target);
      const Expr* root = eff.target.get();
      while (root->kind != ExprKind::Var && root->kind != ExprKind::ConstEnum)
        root = root->args[0].get();
      if (root->kind != ExprKind::Var || !vars_.count(root->name))
        throw TypeError("assignment target must be rooted at a state variable", eff.pos);
      check(eff.value, target_t, /*allow_narrow=*/true);
    }
    params_.clear();
  }

  // -- expressions ----------------------------------------------------------

  void annotate(ExprPtr& e, TypeExpr t) {
    e->type = std::move(t);
    e->typed = true;
  }

  void check_bool(ExprPtr& e) { check(e, TypeExpr::boolean(), false); }

  [[noreturn]] void err(const Expr& e, const std::string& msg) { throw TypeError(msg, e.pos); }

  /// S fits inside T without loss (used where runtime narrowing is unsound).
  static bool contained(const TypeExpr& s, const TypeExpr& t) {
    if (s.kind == TypeKind::Int && t.kind == TypeKind::Int)
      return t.lo <= s.lo && s.hi <= t.hi;
    if (s.kind != t.kind) return false;
    switch (s.kind) {
      case TypeKind::Tuple: {
        if (s.args.size() != t.args.size()) return false;
        for (size_t i = 0; i < s.args.size(); i++)
          if (!contained(s.args[i], t.args[i])) return false;
        return true;
      }
      case TypeKind::Array:
        return s.key() == t.key() && contained(s.value(), t.value());
      default:
        return s == t;
    }
  }

  /// S and T describe overlapping value sets of the same shape kind; a value
  /// of S may or may not be representable in T (runtime-checked narrowing).
  static bool overlapping(const TypeExpr& s, const TypeExpr& t) {
    if (s.kind == TypeKind::Int && t.kind == TypeKind::Int)
      return std::max(s.lo, t.lo) <= std::min(s.hi, t.hi);
    if (s.kind != t.kind) return false;
    switch (s.kind) {
      case TypeKind::Tuple: {
        if (s.args.size() != t.args.size()) return false;
        for (size_t i = 0; i < s.args.size(); i++)
          if (!overlapping(s.args[i], t.args[i])) return false;
        return true;
      }
      case TypeKind::Array:
        return s.key() == t.key() && overlapping(s.value(), t.value());
      default:
        return s == t;
    }
  }

  void wrap_cast(ExprPtr& slot, const TypeExpr& target) {
    auto cast = mk_expr(ExprKind::IntCast, slot->pos, {slot});
    cast->type = target;
    cast->typed = true;
    slot = cast;
  }

  /// Check e against an expected type, rewriting the slot with a cast when
  /// integer ranges differ. allow_narrow permits target ranges that only
  /// overlap the synthesized range (assignment values); such casts carry a
  /// runtime range check in the reference semantics.
  void check(ExprPtr& e, const TypeExpr& expected, bool allow_narrow) {
    switch (e->kind) {
      case ExprKind::ConstEnum: {
        if (expected.kind != TypeKind::Enum)
          err(*e, "enum constant " + e->name + " used where " + type_to_string(expected) +
                      " is expected");
        if (std::find(expected.names.begin(), expected.names.end(), e->name) ==
            expected.names.end())
          err(*e, "unknown enum item " + e->name + " for type " + type_to_string(expected));
        annotate(e, expected);
        return;
      }
      case ExprKind::UnionMake: {
        if (expected.kind != TypeKind::Union)
          err(*e, "union constructor used where " + type_to_string(expected) + " is expected");
        auto it = std::find(expected.names.begin(), expected.names.end(), e->name);
        if (it == expected.names.end())
          err(*e, "unknown union tag " + e->name + " for type " + type_to_string(expected));
        check(e->args[0], expected.args[it - expected.names.begin()], allow_narrow);
        annotate(e, expected);
        return;
      }
      case ExprKind::SetLiteral: {
        if (expected.kind != TypeKind::Set)
          err(*e, "set literal used where " + type_to_string(expected) + " is expected");
        for (auto& el : e->args) {
          check(el, expected.elem(), false);
          if (!contained(el->type, expected.elem()))
            err(*el, "set element of type " + type_to_string(el->type) +
                         " not contained in element type " + type_to_string(expected.elem()));
        }
        annotate(e, expected);
        return;
      }
      default:
        break;
    }
    TypeExpr got = synth(e);
    if (got == expected) return;
    if (contained(got, expected)) {
      wrap_cast(e, expected);
      return;
    }
    if (allow_narrow && overlapping(got, expected)) {
      wrap_cast(e, expected);
      return;
    }
    err(*e, "type mismatch: expected " + type_to_string(expected) + ", found " +
                type_to_string(got));
  }

  std::optional<TypeExpr> try_synth(ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::ConstEnum:
        return std::nullopt;
      case ExprKind::UnionMake:
        return std::nullopt;
      case ExprKind::Var:
        if (!params_.count(e->name) && !vars_.count(e->name)) {
          // An unknown identifier is an enum constant awaiting context.
          e->kind = ExprKind::ConstEnum;
          return std::nullopt;
        }
        return synth(e);
      case ExprKind::SetLiteral: {
        // Synthesizable only when nonempty and every element synthesizes.
        if (e->args.empty()) return std::nullopt;
        for (auto& el : e->args)
          if (!try_synth(el).has_value()) return std::nullopt;
        return synth(e);
      }
      default:
        return synth(e);
    }
  }

  TypeExpr synth_int(ExprPtr& e) {
    TypeExpr t = synth(e);
    if (t.kind != TypeKind::Int)
      err(*e, "expected an integer expression, found " + type_to_string(t));
    return t;
  }

  /// Binary operator whose operands must agree; one side may need the other
  /// side's type as context (enum constants, set literals, union makes).
  void synth_pair(ExprPtr& a, ExprPtr& b, const char* what) {
    auto ta = try_synth(a);
    auto tb = try_synth(b);
    if (!ta && !tb)
      err(*a, std::string("cannot infer operand types of ") + what);
    if (!ta) check(a, *tb, false);
    if (!tb) check(b, *ta, false);
  }

  TypeExpr synth(ExprPtr& e) {
    if (e->typed &&
        (e->kind == ExprKind::ConstValue || e->kind == ExprKind::IntCast)) {
      // Internal nodes carry their types from construction; re-typechecking
      // a lowered model revisits children only.
      if (e->kind == ExprKind::IntCast) synth(e->args[0]);
      return e->type;
    }
    switch (e->kind) {
      case ExprKind::ConstBool:
        annotate(e, TypeExpr::boolean());
        break;
      case ExprKind::ConstInt:
        annotate(e, TypeExpr::intrange(e->ival, e->ival));
        break;
      case ExprKind::ConstEnum:
        err(*e, "unknown identifier (or enum constant without context): " + e->name);
      case ExprKind::Var: {
        auto itp = params_.find(e->name);
        if (itp != params_.end()) {
          annotate(e, itp->second);
          break;
        }
        auto itv = vars_.find(e->name);
        if (itv != vars_.end()) {
          annotate(e, itv->second);
          break;
        }
        e->kind = ExprKind::ConstEnum;
        err(*e, "unknown identifier (or enum constant without context): " + e->name);
      }
      case ExprKind::Not:
        check_bool(e->args[0]);
        annotate(e, TypeExpr::boolean());
        break;
      case ExprKind::And:
      case ExprKind::Or:
        check_bool(e->args[0]);
        check_bool(e->args[1]);
        annotate(e, TypeExpr::boolean());
        break;
      case ExprKind::Add:
      case ExprKind::Sub:
      case ExprKind::Mul:
      case ExprKind::Div: {
        TypeExpr t1 = synth_int(e->args[0]);
        TypeExpr t2 = synth_int(e->args[1]);
        IntRangeBounds r{};
        switch (e->kind) {
          case ExprKind::Add: r = widen_add(t1.lo, t1.hi, t2.lo, t2.hi); break;
          case ExprKind::Sub: r = widen_sub(t1.lo, t1.hi, t2.lo, t2.hi); break;
          case ExprKind::Mul: r = widen_mul(t1.lo, t1.hi, t2.lo, t2.hi); break;
          default: r = widen_div(t1.lo, t1.hi, t2.lo, t2.hi, e->pos); break;
        }
        TypeExpr rt = TypeExpr::intrange(r.lo, r.hi);
        require_width(rt, e->pos);
        annotate(e, rt);
        break;
      }
      case ExprKind::Eq:
      case ExprKind::Neq: {
        synth_pair(e->args[0], e->args[1], "eq");
        const TypeExpr& ta = e->args[0]->type;
        const TypeExpr& tb = e->args[1]->type;
        bool ok = (ta.kind == TypeKind::Int && tb.kind == TypeKind::Int) || ta == tb;
        if (!ok)
          err(*e, "cannot compare " + type_to_string(ta) + " with " + type_to_string(tb));
        annotate(e, TypeExpr::boolean());
        break;
      }
      case ExprKind::Lt:
      case ExprKind::Leq:
      case ExprKind::Gt:
      case ExprKind::Geq:
        synth_int(e->args[0]);
        synth_int(e->args[1]);
        annotate(e, TypeExpr::boolean());
        break;
      case ExprKind::In: {
        TypeExpr ts = synth(e->args[1]);
        if (ts.kind != TypeKind::Set)
          err(*e->args[1], "right operand of 'in' must be a set, found " + type_to_string(ts));
        const TypeExpr& elem = ts.elem();
        if (elem.kind == TypeKind::Int) {
          // Any range is fine: a value outside the element domain is simply
          // not a member.
          auto ti = try_synth(e->args[0]);
          if (!ti) check(e->args[0], elem, false);
          else if (ti->kind != TypeKind::Int)
            err(*e->args[0], "element type mismatch in 'in'");
        } else {
          auto ti = try_synth(e->args[0]);
          if (!ti) check(e->args[0], elem, false);
          else if (*ti != elem)
            err(*e->args[0], "element of type " + type_to_string(*ti) +
                                 " tested against set of " + type_to_string(elem));
        }
        annotate(e, TypeExpr::boolean());
        break;
      }
      case ExprKind::Subseteq:
      case ExprKind::Union:
      case ExprKind::Intersect:
      case ExprKind::Diff: {
        synth_pair(e->args[0], e->args[1], "set operation");
        const TypeExpr& ta = e->args[0]->type;
        const TypeExpr& tb = e->args[1]->type;
        if (ta.kind != TypeKind::Set || ta != tb)
          err(*e, "set operation needs two sets of the same type, found " + type_to_string(ta) +
                      " and " + type_to_string(tb));
        annotate(e, e->kind == ExprKind::Subseteq ? TypeExpr::boolean() : ta);
        break;
      }
      case ExprKind::SetLiteral: {
        if (e->args.empty())
          err(*e, "cannot infer the type of an empty set literal");
        std::optional<TypeExpr> lub;
        for (auto& el : e->args) {
          auto t = try_synth(el);
          if (!t) err(*el, "cannot infer set element type without context");
          if (!lub) {
            lub = *t;
          } else if (lub->kind == TypeKind::Int && t->kind == TypeKind::Int) {
            lub->lo = std::min(lub->lo, t->lo);
            lub->hi = std::max(lub->hi, t->hi);
          } else if (*lub != *t) {
            err(*el, "mixed element types in set literal");
          }
        }
        require_width(TypeExpr::set(*lub), e->pos);
        annotate(e, TypeExpr::set(*lub));
        break;
      }
      case ExprKind::TupleAccess: {
        TypeExpr tb = synth(e->args[0]);
        if (tb.kind != TypeKind::Tuple)
          err(*e, "'." + std::to_string(e->ival) + "' applied to non-tuple " +
                      type_to_string(tb));
        if (e->ival < 1 || e->ival > static_cast<long long>(tb.args.size()))
          err(*e, "tuple index " + std::to_string(e->ival) + " out of range 1.." +
                      std::to_string(tb.args.size()));
        annotate(e, tb.args[e->ival - 1]);
        break;
      }
      case ExprKind::FieldAccess: {
        TypeExpr tb = synth(e->args[0]);
        if (tb.kind != TypeKind::Record)
          err(*e, "'." + e->name + "' applied to non-record " + type_to_string(tb));
        auto it = std::find(tb.names.begin(), tb.names.end(), e->name);
        if (it == tb.names.end()) err(*e, "unknown record field: " + e->name);
        annotate(e, tb.args[it - tb.names.begin()]);
        break;
      }
      case ExprKind::UnionIs:
      case ExprKind::UnionAs: {
        TypeExpr tb = synth(e->args[0]);
        if (tb.kind != TypeKind::Union)
          err(*e, "'" + std::string(e->kind == ExprKind::UnionIs ? "is" : "as") + " " + e->name +
                      "' applied to non-union " + type_to_string(tb));
        auto it = std::find(tb.names.begin(), tb.names.end(), e->name);
        if (it == tb.names.end()) err(*e, "unknown union tag: " + e->name);
        annotate(e, e->kind == ExprKind::UnionIs ? TypeExpr::boolean()
                                                 : tb.args[it - tb.names.begin()]);
        break;
      }
      case ExprKind::UnionMake:
        err(*e, "union constructor needs a context that determines its type");
      case ExprKind::ArrayIndex: {
        TypeExpr tb = synth(e->args[0]);
        if (tb.kind != TypeKind::Array)
          err(*e, "indexing applied to non-array " + type_to_string(tb));
        const TypeExpr& key = tb.key();
        if (key.kind == TypeKind::Int) {
          auto ti = try_synth(e->args[1]);
          if (!ti) check(e->args[1], key, false);
          else {
            if (ti->kind != TypeKind::Int)
              err(*e->args[1], "array index must have the key type " + type_to_string(key));
            if (!contained(*ti, key))
              err(*e->args[1], "index range " + type_to_string(*ti) +
                                   " not contained in key range " + type_to_string(key));
            if (*ti != key) wrap_cast(e->args[1], key);
          }
        } else {
          auto ti = try_synth(e->args[1]);
          if (!ti) check(e->args[1], key, false);
          else if (*ti != key)
            err(*e->args[1], "array index of type " + type_to_string(*ti) +
                                 " used with key type " + type_to_string(key));
        }
        annotate(e, tb.value());
        break;
      }
      case ExprKind::TupleMake: {
        std::vector<TypeExpr> comps;
        for (auto& c : e->args) comps.push_back(synth(c));
        annotate(e, TypeExpr::tuple(std::move(comps)));
        break;
      }
      case ExprKind::ConstValue:
      case ExprKind::IntCast:
        break;  // handled above
    }
    return e->type;
  }

  SourceModel& m_;
  const CheckOptions& opts_;
  std::map<std::string, TypeExpr> aliases_;
  std::map<std::string, TypeExpr> resolved_;
  std::map<std::string, TypeExpr> vars_;
  std::map<std::string, TypeExpr> params_;
};

}  // namespace

void typecheck(SourceModel& m, const CheckOptions& opts) { Checker(m, opts).run(); }

TypeExpr typecheck_expr(SourceModel& m, ExprPtr& e, const CheckOptions& opts) {
  return Checker(m, opts).run_expr(e);
}

}  // namespace typal
