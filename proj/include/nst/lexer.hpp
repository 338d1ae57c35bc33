#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nst/errors.hpp"

namespace nst {

enum class TokenKind {
  Number,
  Identifier,
  Keyword,
  Punct,
  IntervalBracket,
  String,  // quoted template name
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string lexeme;
  SourceSpan span;
  double number = 0.0;  // value when kind == Number
};

/// Tokenizes DSL source; throws SyntaxError on malformed input.
std::vector<Token> lex(std::string_view source);

std::string token_kind_name(TokenKind kind);

}  // namespace nst
