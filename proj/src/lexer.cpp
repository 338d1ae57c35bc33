#include "nst/lexer.hpp"

#include <cctype>
#include <charconv>
#include <unordered_set>

namespace nst {

namespace {

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw = {
      "acceptance", "bidding", "template", "phase", "accept", "if", "bid",
      "max", "Q", "U", "t", "offer", "next_own", "u_dyn", "u_fixed",
      "boulware", "pareto", "opponent_greedy", "random_above_threshold",
  };
  return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::string token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Number: return "NUMBER";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Punct: return "punctuation";
    case TokenKind::IntervalBracket: return "interval bracket";
    case TokenKind::String: return "string";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  int line = 1;
  int column = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (source[i + k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += n;
  };

  auto push = [&](TokenKind kind, std::size_t start, std::size_t len, SourceSpan span) {
    Token t;
    t.kind = kind;
    t.lexeme = std::string(source.substr(start, len));
    t.span = span;
    tokens.push_back(std::move(t));
  };

  while (i < source.size()) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    const SourceSpan span{line, column, 1};
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < source.size() && source[j] != '"' && source[j] != '\n') ++j;
      if (j >= source.size() || source[j] != '"') {
        throw SyntaxError(span, "closing '\"'", "end of line");
      }
      SourceSpan s = span;
      s.length = static_cast<int>(j + 1 - i);
      push(TokenKind::String, i + 1, j - i - 1, s);
      advance(j + 1 - i);
      continue;
    }
    if (digit(c) || (c == '-' && i + 1 < source.size() && (digit(source[i + 1]) || source[i + 1] == '.')) ||
        (c == '.' && i + 1 < source.size() && digit(source[i + 1]))) {
      std::size_t j = i;
      if (source[j] == '-') ++j;
      while (j < source.size() && digit(source[j])) ++j;
      if (j < source.size() && source[j] == '.') {
        ++j;
        while (j < source.size() && digit(source[j])) ++j;
      }
      if (j < source.size() && (source[j] == 'e' || source[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < source.size() && (source[k] == '+' || source[k] == '-')) ++k;
        if (k < source.size() && digit(source[k])) {
          while (k < source.size() && digit(source[k])) ++k;
          j = k;
        }
      }
      SourceSpan s = span;
      s.length = static_cast<int>(j - i);
      Token t;
      t.kind = TokenKind::Number;
      t.lexeme = std::string(source.substr(i, j - i));
      t.span = s;
      auto [_, ec] = std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), t.number);
      if (ec != std::errc{}) throw SyntaxError(s, "a valid number", "'" + t.lexeme + "'");
      tokens.push_back(std::move(t));
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < source.size() && ident_char(source[j])) ++j;
      SourceSpan s = span;
      s.length = static_cast<int>(j - i);
      const std::string word(source.substr(i, j - i));
      push(keywords().count(word) ? TokenKind::Keyword : TokenKind::Identifier, i, j - i, s);
      advance(j - i);
      continue;
    }
    if (c == '[' || c == ']') {
      push(TokenKind::IntervalBracket, i, 1, span);
      advance(1);
      continue;
    }
    if (c == '>' && i + 1 < source.size() && source[i + 1] == '=') {
      SourceSpan s = span;
      s.length = 2;
      push(TokenKind::Punct, i, 2, s);
      advance(2);
      continue;
    }
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',' || c == '*' || c == '+') {
      push(TokenKind::Punct, i, 1, span);
      advance(1);
      continue;
    }
    throw SyntaxError(span, "a token", std::string("'") + c + "'");
  }

  Token end;
  end.kind = TokenKind::End;
  end.lexeme = "<eof>";
  end.span = SourceSpan{line, column, 0};
  tokens.push_back(std::move(end));
  return tokens;
}

}  // namespace nst
