#include "typal/lexer.hpp"

#include <cctype>
#include <map>

namespace typal {

const char* token_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwType: return "'type'";
    case Tok::KwVar: return "'var'";
    case Tok::KwInit: return "'init'";
    case Tok::KwGoal: return "'goal'";
    case Tok::KwAction: return "'action'";
    case Tok::KwPre: return "'pre'";
    case Tok::KwEff: return "'eff'";
    case Tok::KwEnd: return "'end'";
    case Tok::KwWhen: return "'when'";
    case Tok::KwBool: return "'bool'";
    case Tok::KwSet: return "'set'";
    case Tok::KwArray: return "'array'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwOr: return "'or'";
    case Tok::KwAnd: return "'and'";
    case Tok::KwNot: return "'not'";
    case Tok::KwEq: return "'eq'";
    case Tok::KwNeq: return "'neq'";
    case Tok::KwLt: return "'lt'";
    case Tok::KwLeq: return "'leq'";
    case Tok::KwGt: return "'gt'";
    case Tok::KwGeq: return "'geq'";
    case Tok::KwIn: return "'in'";
    case Tok::KwSubseteq: return "'subseteq'";
    case Tok::KwAdd: return "'add'";
    case Tok::KwSub: return "'sub'";
    case Tok::KwMul: return "'mul'";
    case Tok::KwDiv: return "'div'";
    case Tok::KwUnion: return "'union'";
    case Tok::KwInter: return "'inter'";
    case Tok::KwDiff: return "'diff'";
    case Tok::KwIs: return "'is'";
    case Tok::KwAs: return "'as'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Assign: return "':='";
    case Tok::EqSign: return "'='";
  }
  return "?";
}

namespace {

const std::map<std::string, Tok>& keyword_table() {
  static const std::map<std::string, Tok> kw = {
      {"type", Tok::KwType},   {"var", Tok::KwVar},       {"init", Tok::KwInit},
      {"goal", Tok::KwGoal},   {"action", Tok::KwAction}, {"pre", Tok::KwPre},
      {"eff", Tok::KwEff},     {"end", Tok::KwEnd},       {"when", Tok::KwWhen},
      {"bool", Tok::KwBool},   {"set", Tok::KwSet},       {"array", Tok::KwArray},
      {"true", Tok::KwTrue},   {"false", Tok::KwFalse},   {"or", Tok::KwOr},
      {"and", Tok::KwAnd},     {"not", Tok::KwNot},       {"eq", Tok::KwEq},
      {"neq", Tok::KwNeq},     {"lt", Tok::KwLt},         {"leq", Tok::KwLeq},
      {"gt", Tok::KwGt},       {"geq", Tok::KwGeq},       {"in", Tok::KwIn},
      {"subseteq", Tok::KwSubseteq}, {"add", Tok::KwAdd}, {"sub", Tok::KwSub},
      {"mul", Tok::KwMul},     {"div", Tok::KwDiv},       {"union", Tok::KwUnion},
      {"inter", Tok::KwInter}, {"diff", Tok::KwDiff},     {"is", Tok::KwIs},
      {"as", Tok::KwAs},
  };
  return kw;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto peek = [&](size_t k = 0) -> char { return i + k < text.size() ? text[i + k] : '\0'; };
  auto advance = [&]() {
    if (text[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    i++;
  };

  while (i < text.size()) {
    const char c = peek();
    if (c == '#') {
      while (i < text.size() && peek() != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }

    Token tok;
    tok.pos = {line, col};

    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        word += peek();
        advance();
      }
      auto it = keyword_table().find(word);
      tok.kind = it != keyword_table().end() ? it->second : Tok::Ident;
      tok.text = std::move(word);
      out.push_back(std::move(tok));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::string num;
      if (c == '-') {
        num += '-';
        advance();
      }
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
        num += peek();
        advance();
      }
      tok.kind = Tok::Int;
      tok.text = num;
      try {
        tok.ival = std::stoll(num);
      } catch (const std::exception&) {
        throw ParseError("integer literal out of range: " + num, tok.pos);
      }
      out.push_back(std::move(tok));
      continue;
    }

    auto single = [&](Tok k) {
      tok.kind = k;
      tok.text = std::string(1, c);
      advance();
      out.push_back(tok);
    };

    switch (c) {
      case '(': single(Tok::LParen); break;
      case ')': single(Tok::RParen); break;
      case '{': single(Tok::LBrace); break;
      case '}': single(Tok::RBrace); break;
      case '[': single(Tok::LBracket); break;
      case ']': single(Tok::RBracket); break;
      case '<': single(Tok::LAngle); break;
      case '>': single(Tok::RAngle); break;
      case ',': single(Tok::Comma); break;
      case ';': single(Tok::Semi); break;
      case '=': single(Tok::EqSign); break;
      case ':':
        if (peek(1) == '=') {
          tok.kind = Tok::Assign;
          tok.text = ":=";
          advance();
          advance();
          out.push_back(tok);
        } else {
          single(Tok::Colon);
        }
        break;
      case '.':
        if (peek(1) == '.') {
          tok.kind = Tok::DotDot;
          tok.text = "..";
          advance();
          advance();
          out.push_back(tok);
        } else {
          single(Tok::Dot);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tok.pos);
    }
  }

  Token end;
  end.kind = Tok::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace typal
