#pragma once

#include <string>
#include <vector>

namespace nst {

/// One numeric mention found in explanation text.
struct Numeral {
  double value = 0.0;
  bool percent = false;   // immediately followed by '%'
  std::string lexeme;     // digits as written, without the '%'
  std::size_t position = 0;
};

/// Fixed numeral grammar: optional sign, decimals, optional exponent,
/// optional '%' suffix. Digits embedded in identifiers are ignored.
std::vector<Numeral> extract_numerals(const std::string& text);

/// True when the numeral reads as the constant, raw or divided by 100
/// (percent form), within the given tolerance.
bool numeral_matches(const Numeral& numeral, double constant, double tolerance);

}  // namespace nst
