#include "nst/numerals.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace nst {

namespace {

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool letterish(char c) { return word_char(c) && !digit(c); }

}  // namespace

std::vector<Numeral> extract_numerals(const std::string& text) {
  std::vector<Numeral> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!digit(text[i])) {
      ++i;
      continue;
    }
    // Digits belonging to a name are not numeric content: "v2",
    // "generated-89081" and the leading digits of a quoted name like "42fast".
    const bool glued = i > 0 && letterish(text[i - 1]);
    const bool hyphenated = i > 1 && text[i - 1] == '-' && letterish(text[i - 2]);
    const bool quoted_name = i > 0 && text[i - 1] == '"';
    if (glued || hyphenated || quoted_name) {
      while (i < text.size() && word_char(text[i])) ++i;
      continue;
    }
    std::size_t start = i;
    if (i > 0 && text[i - 1] == '-') {
      // A minus counts as a sign unless it trails a number or word ("5-3").
      const bool binary = i >= 2 && (word_char(text[i - 2]) || digit(text[i - 2]));
      if (!binary) start = i - 1;
    }
    std::size_t j = i;
    while (j < text.size() && digit(text[j])) ++j;
    if (j < text.size() && text[j] == '.' && j + 1 < text.size() && digit(text[j + 1])) {
      ++j;
      while (j < text.size() && digit(text[j])) ++j;
    }
    if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
      if (k < text.size() && digit(text[k])) {
        while (k < text.size() && digit(text[k])) ++k;
        j = k;
      }
    }
    Numeral n;
    n.lexeme = text.substr(start, j - start);  // includes the sign when negative
    n.position = start;
    std::from_chars(n.lexeme.data(), n.lexeme.data() + n.lexeme.size(), n.value);
    if (j < text.size() && text[j] == '%') {
      n.percent = true;
      ++j;
    }
    out.push_back(std::move(n));
    i = j;
  }
  return out;
}

bool numeral_matches(const Numeral& numeral, double constant, double tolerance) {
  if (std::abs(numeral.value - constant) <= tolerance) return true;
  return std::abs(numeral.value / 100.0 - constant) <= tolerance;
}

}  // namespace nst
