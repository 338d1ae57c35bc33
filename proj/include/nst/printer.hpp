#pragma once

#include <string>

#include "nst/expr.hpp"
#include "nst/strategy.hpp"

namespace nst {

/// Shortest decimal rendering that parses back to the same double.
std::string render_number(double v);

/// Fixed two-decimal rendering (used for percentages and layperson text).
std::string render_fixed2(double v);

/// Canonical DSL rendering of a*t + b ("0.5" when the slope is zero).
std::string render_linear(double slope, double intercept);

std::string render_expr(const MathExpr& e);

/// Canonical DSL text; parse(pretty_print(x)) is structurally equal to x.
std::string pretty_print(const StrategyTemplate& tmpl);

}  // namespace nst
