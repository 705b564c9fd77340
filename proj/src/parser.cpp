#include "typal/parser.hpp"

#include <initializer_list>
#include <sstream>

#include "typal/lexer.hpp"

namespace typal {

ExprPtr mk_expr(ExprKind k, SourcePos pos, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>(k, pos);
  e->args = std::move(args);
  return e;
}

ExprPtr mk_const_bool(bool v, SourcePos pos) {
  auto e = std::make_shared<Expr>(ExprKind::ConstBool, pos);
  e->bval = v;
  return e;
}

ExprPtr mk_const_int(long long v, SourcePos pos) {
  auto e = std::make_shared<Expr>(ExprKind::ConstInt, pos);
  e->ival = v;
  return e;
}

ExprPtr mk_var(std::string name, SourcePos pos) {
  auto e = std::make_shared<Expr>(ExprKind::Var, pos);
  e->name = std::move(name);
  return e;
}

bool is_reference_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Var:
      return true;
    case ExprKind::TupleAccess:
    case ExprKind::FieldAccess:
    case ExprKind::UnionAs:
    case ExprKind::ArrayIndex:
      return is_reference_expr(*e.args[0]);
    default:
      return false;
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  SourceModel parse_model(std::string name) {
    SourceModel m;
    m.name = std::move(name);
    if (at(Tok::End))
      fail("expected declaration ('type', 'var', 'init', 'goal' or 'action')");
    while (!at(Tok::End)) {
      switch (cur().kind) {
        case Tok::KwType: {
          eat(Tok::KwType);
          TypeDef td;
          td.pos = cur().pos;
          td.name = eat(Tok::Ident).text;
          eat(Tok::EqSign);
          td.type = parse_type();
          eat(Tok::Semi);
          m.typedefs.push_back(std::move(td));
          break;
        }
        case Tok::KwVar: {
          eat(Tok::KwVar);
          VarDecl vd;
          vd.pos = cur().pos;
          vd.name = eat(Tok::Ident).text;
          eat(Tok::Colon);
          vd.type = parse_type();
          eat(Tok::Semi);
          m.vars.push_back(std::move(vd));
          break;
        }
        case Tok::KwInit: {
          eat(Tok::KwInit);
          InitDecl id;
          id.pos = cur().pos;
          id.var = eat(Tok::Ident).text;
          eat(Tok::EqSign);
          id.value = parse_value();
          eat(Tok::Semi);
          m.inits.push_back(std::move(id));
          break;
        }
        case Tok::KwGoal: {
          eat(Tok::KwGoal);
          m.goal_pos = cur().pos;
          m.goal = parse_expr();
          eat(Tok::Semi);
          break;
        }
        case Tok::KwAction: {
          m.actions.push_back(parse_action());
          break;
        }
        default:
          fail("expected declaration ('type', 'var', 'init', 'goal' or 'action')");
      }
    }
    return m;
  }

  TypeExpr parse_type() {
    switch (cur().kind) {
      case Tok::KwBool:
        eat(Tok::KwBool);
        return TypeExpr::boolean();
      case Tok::Int: {
        long long lo = eat(Tok::Int).ival;
        eat(Tok::DotDot);
        long long hi = eat(Tok::Int).ival;
        return TypeExpr::intrange(lo, hi);
      }
      case Tok::LBrace: {
        // enum {a, b} or record {a: t, b: t}
        eat(Tok::LBrace);
        std::string first = eat(Tok::Ident).text;
        if (at(Tok::Colon)) {
          eat(Tok::Colon);
          std::vector<std::string> fields{first};
          std::vector<TypeExpr> types{parse_type()};
          while (at(Tok::Comma)) {
            eat(Tok::Comma);
            fields.push_back(eat(Tok::Ident).text);
            eat(Tok::Colon);
            types.push_back(parse_type());
          }
          eat(Tok::RBrace);
          return TypeExpr::record(std::move(fields), std::move(types));
        }
        std::vector<std::string> items{first};
        while (at(Tok::Comma)) {
          eat(Tok::Comma);
          items.push_back(eat(Tok::Ident).text);
        }
        eat(Tok::RBrace);
        return TypeExpr::enumeration(std::move(items));
      }
      case Tok::LAngle: {
        eat(Tok::LAngle);
        std::vector<TypeExpr> comps{parse_type()};
        while (at(Tok::Comma)) {
          eat(Tok::Comma);
          comps.push_back(parse_type());
        }
        eat(Tok::RAngle);
        return TypeExpr::tuple(std::move(comps));
      }
      case Tok::LBracket: {
        eat(Tok::LBracket);
        std::vector<std::string> tags;
        std::vector<TypeExpr> types;
        tags.push_back(eat(Tok::Ident).text);
        eat(Tok::Colon);
        types.push_back(parse_type());
        while (at(Tok::Comma)) {
          eat(Tok::Comma);
          tags.push_back(eat(Tok::Ident).text);
          eat(Tok::Colon);
          types.push_back(parse_type());
        }
        eat(Tok::RBracket);
        return TypeExpr::union_(std::move(tags), std::move(types));
      }
      case Tok::KwSet: {
        eat(Tok::KwSet);
        eat(Tok::LAngle);
        TypeExpr elem = parse_type();
        eat(Tok::RAngle);
        return TypeExpr::set(std::move(elem));
      }
      case Tok::KwArray: {
        eat(Tok::KwArray);
        eat(Tok::LAngle);
        TypeExpr key = parse_type();
        eat(Tok::Comma);
        TypeExpr value = parse_type();
        eat(Tok::RAngle);
        return TypeExpr::array(std::move(key), std::move(value));
      }
      case Tok::Ident:
        return TypeExpr::named(eat(Tok::Ident).text);
      default:
        fail("expected type ('bool', integer range, '{', '<', '[', 'set', 'array' or name)");
    }
    return {};
  }

  Value parse_value() {
    switch (cur().kind) {
      case Tok::KwTrue:
        eat(Tok::KwTrue);
        return Value::boolean(true);
      case Tok::KwFalse:
        eat(Tok::KwFalse);
        return Value::boolean(false);
      case Tok::Int:
        return Value::integer(eat(Tok::Int).ival);
      case Tok::Ident:
        return Value::enum_item(eat(Tok::Ident).text);
      case Tok::LAngle: {
        eat(Tok::LAngle);
        std::vector<Value> comps{parse_value()};
        while (at(Tok::Comma)) {
          eat(Tok::Comma);
          comps.push_back(parse_value());
        }
        eat(Tok::RAngle);
        return Value::tuple(std::move(comps));
      }
      case Tok::LBrace: {
        // {} empty set | {v, ...} set | {name: v, ...} record
        eat(Tok::LBrace);
        if (at(Tok::RBrace)) {
          eat(Tok::RBrace);
          return Value::set({});
        }
        if (at(Tok::Ident) && peek(1).kind == Tok::Colon) {
          Value rec;
          rec.kind = ValueKind::Record;
          rec.names.push_back(eat(Tok::Ident).text);
          eat(Tok::Colon);
          rec.elems.push_back(parse_value());
          while (at(Tok::Comma)) {
            eat(Tok::Comma);
            rec.names.push_back(eat(Tok::Ident).text);
            eat(Tok::Colon);
            rec.elems.push_back(parse_value());
          }
          eat(Tok::RBrace);
          return rec;
        }
        std::vector<Value> elems{parse_value()};
        while (at(Tok::Comma)) {
          eat(Tok::Comma);
          elems.push_back(parse_value());
        }
        eat(Tok::RBrace);
        return Value::set(std::move(elems));
      }
      case Tok::LBracket: {
        // [tag: v] union | [v, v, ...] array
        eat(Tok::LBracket);
        if (at(Tok::Ident) && peek(1).kind == Tok::Colon) {
          Value u;
          u.kind = ValueKind::Union;
          u.name = eat(Tok::Ident).text;
          eat(Tok::Colon);
          u.elems.push_back(parse_value());
          eat(Tok::RBracket);
          return u;
        }
        std::vector<Value> elems{parse_value()};
        while (at(Tok::Comma)) {
          eat(Tok::Comma);
          elems.push_back(parse_value());
        }
        eat(Tok::RBracket);
        return Value::array(std::move(elems));
      }
      default:
        fail("expected literal value");
    }
    return {};
  }

  ExprPtr parse_expr() { return parse_or(); }

 private:
  Action parse_action() {
    eat(Tok::KwAction);
    Action a;
    a.pos = cur().pos;
    a.name = eat(Tok::Ident).text;
    eat(Tok::LParen);
    if (!at(Tok::RParen)) {
      for (;;) {
        Param p;
        p.name = eat(Tok::Ident).text;
        eat(Tok::Colon);
        p.type = parse_type();
        a.params.push_back(std::move(p));
        if (!at(Tok::Comma)) break;
        eat(Tok::Comma);
      }
    }
    eat(Tok::RParen);
    eat(Tok::KwPre);
    a.pre = parse_expr();
    eat(Tok::KwEff);
    while (!at(Tok::KwEnd)) {
      ConditionalAssignment eff;
      eff.pos = cur().pos;
      if (at(Tok::KwWhen)) {
        eat(Tok::KwWhen);
        eff.cond = parse_expr();
      }
      eff.target = parse_expr();
      if (!is_reference_expr(*eff.target))
        throw ParseError("assignment target must be a reference expression", eff.pos);
      eat(Tok::Assign);
      eff.value = parse_expr();
      eat(Tok::Semi);
      a.effects.push_back(std::move(eff));
    }
    eat(Tok::KwEnd);
    return a;
  }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (at(Tok::KwOr)) {
      SourcePos p = eat(Tok::KwOr).pos;
      e = mk_expr(ExprKind::Or, p, {e, parse_and()});
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_not();
    while (at(Tok::KwAnd)) {
      SourcePos p = eat(Tok::KwAnd).pos;
      e = mk_expr(ExprKind::And, p, {e, parse_not()});
    }
    return e;
  }

  ExprPtr parse_not() {
    if (at(Tok::KwNot)) {
      SourcePos p = eat(Tok::KwNot).pos;
      return mk_expr(ExprKind::Not, p, {parse_not()});
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_sum();
    ExprKind k;
    switch (cur().kind) {
      case Tok::KwEq: k = ExprKind::Eq; break;
      case Tok::KwNeq: k = ExprKind::Neq; break;
      case Tok::KwLt: k = ExprKind::Lt; break;
      case Tok::KwLeq: k = ExprKind::Leq; break;
      case Tok::KwGt: k = ExprKind::Gt; break;
      case Tok::KwGeq: k = ExprKind::Geq; break;
      case Tok::KwIn: k = ExprKind::In; break;
      case Tok::KwSubseteq: k = ExprKind::Subseteq; break;
      default: return e;
    }
    SourcePos p = advance().pos;
    return mk_expr(k, p, {e, parse_sum()});
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_prod();
    while (at(Tok::KwAdd) || at(Tok::KwSub)) {
      ExprKind k = at(Tok::KwAdd) ? ExprKind::Add : ExprKind::Sub;
      SourcePos p = advance().pos;
      e = mk_expr(k, p, {e, parse_prod()});
    }
    return e;
  }

  ExprPtr parse_prod() {
    ExprPtr e = parse_setop();
    while (at(Tok::KwMul) || at(Tok::KwDiv)) {
      ExprKind k = at(Tok::KwMul) ? ExprKind::Mul : ExprKind::Div;
      SourcePos p = advance().pos;
      e = mk_expr(k, p, {e, parse_setop()});
    }
    return e;
  }

  ExprPtr parse_setop() {
    ExprPtr e = parse_postfix();
    while (at(Tok::KwUnion) || at(Tok::KwInter) || at(Tok::KwDiff)) {
      ExprKind k = at(Tok::KwUnion)   ? ExprKind::Union
                   : at(Tok::KwInter) ? ExprKind::Intersect
                                      : ExprKind::Diff;
      SourcePos p = advance().pos;
      e = mk_expr(k, p, {e, parse_postfix()});
    }
    return e;
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    for (;;) {
      if (at(Tok::Dot)) {
        SourcePos p = eat(Tok::Dot).pos;
        if (at(Tok::Int)) {
          auto node = mk_expr(ExprKind::TupleAccess, p, {e});
          node->ival = eat(Tok::Int).ival;
          e = node;
        } else {
          auto node = mk_expr(ExprKind::FieldAccess, p, {e});
          node->name = eat(Tok::Ident).text;
          e = node;
        }
      } else if (at(Tok::LBracket)) {
        SourcePos p = eat(Tok::LBracket).pos;
        auto node = mk_expr(ExprKind::ArrayIndex, p, {e, parse_expr()});
        eat(Tok::RBracket);
        e = node;
      } else if (at(Tok::KwIs)) {
        SourcePos p = eat(Tok::KwIs).pos;
        auto node = mk_expr(ExprKind::UnionIs, p, {e});
        node->name = eat(Tok::Ident).text;
        e = node;
      } else if (at(Tok::KwAs)) {
        SourcePos p = eat(Tok::KwAs).pos;
        auto node = mk_expr(ExprKind::UnionAs, p, {e});
        node->name = eat(Tok::Ident).text;
        e = node;
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_primary() {
    switch (cur().kind) {
      case Tok::KwTrue:
        return mk_const_bool(true, advance().pos);
      case Tok::KwFalse:
        return mk_const_bool(false, advance().pos);
      case Tok::Int: {
        Token t = advance();
        return mk_const_int(t.ival, t.pos);
      }
      case Tok::Ident: {
        Token t = advance();
        // Resolution into Var vs enum constant happens in the typechecker.
        return mk_var(t.text, t.pos);
      }
      case Tok::LParen: {
        eat(Tok::LParen);
        ExprPtr e = parse_expr();
        eat(Tok::RParen);
        return e;
      }
      case Tok::LBrace: {
        SourcePos p = eat(Tok::LBrace).pos;
        auto node = mk_expr(ExprKind::SetLiteral, p);
        if (!at(Tok::RBrace)) {
          node->args.push_back(parse_expr());
          while (at(Tok::Comma)) {
            eat(Tok::Comma);
            node->args.push_back(parse_expr());
          }
        }
        eat(Tok::RBrace);
        return node;
      }
      case Tok::LBracket: {
        SourcePos p = eat(Tok::LBracket).pos;
        auto node = mk_expr(ExprKind::UnionMake, p);
        node->name = eat(Tok::Ident).text;
        eat(Tok::Colon);
        node->args.push_back(parse_expr());
        eat(Tok::RBracket);
        return node;
      }
      default:
        fail("expected expression");
    }
    return nullptr;
  }

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  Token advance() { return toks_[pos_++]; }

  Token eat(Tok k) {
    if (!at(k)) {
      std::ostringstream os;
      os << "expected " << token_name(k) << ", found " << token_name(cur().kind);
      if (!cur().text.empty()) os << " '" << cur().text << "'";
      throw ParseError(os.str(), cur().pos);
    }
    return advance();
  }

  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream os;
    os << what << ", found " << token_name(cur().kind);
    if (!cur().text.empty()) os << " '" << cur().text << "'";
    throw ParseError(os.str(), cur().pos);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;

 public:
  bool at_end() const { return at(Tok::End); }
  [[noreturn]] void fail_public(const std::string& what) { fail(what); }
};

}  // namespace

SourceModel parse_domain(std::string_view text, std::string model_name) {
  Parser p(text);
  return p.parse_model(std::move(model_name));
}

TypeExpr parse_type_text(std::string_view text) {
  Parser p(text);
  TypeExpr t = p.parse_type();
  if (!p.at_end()) p.fail_public("trailing input after type");
  return t;
}

Value parse_value_text(std::string_view text) {
  Parser p(text);
  Value v = p.parse_value();
  if (!p.at_end()) p.fail_public("trailing input after value");
  return v;
}

}  // namespace typal
