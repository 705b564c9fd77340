#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "typal/ast.hpp"

namespace typal {

enum class Tok {
  End,
  Ident,
  Int,
  // keywords
  KwType,
  KwVar,
  KwInit,
  KwGoal,
  KwAction,
  KwPre,
  KwEff,
  KwEnd,
  KwWhen,
  KwBool,
  KwSet,
  KwArray,
  KwTrue,
  KwFalse,
  KwOr,
  KwAnd,
  KwNot,
  KwEq,
  KwNeq,
  KwLt,
  KwLeq,
  KwGt,
  KwGeq,
  KwIn,
  KwSubseteq,
  KwAdd,
  KwSub,
  KwMul,
  KwDiv,
  KwUnion,
  KwInter,
  KwDiff,
  KwIs,
  KwAs,
  // punctuation
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  LAngle,
  RAngle,
  Comma,
  Colon,
  Semi,
  Dot,
  DotDot,
  Assign,  // :=
  EqSign,  // =
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long ival = 0;
  SourcePos pos;
};

const char* token_name(Tok t);

/// Tokenize the whole input. '#' starts a line comment. Throws ParseError.
std::vector<Token> tokenize(std::string_view text);

}  // namespace typal
