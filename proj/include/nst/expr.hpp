#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nst {

enum class ExprKind {
  Constant,     // finite real literal
  TimeSymbol,   // normalized negotiation time t
  Symbol,       // named quantity (offer, next_own, u_dyn, u_fixed)
  Sum,          // n-ary addition
  Product,      // n-ary multiplication
  FunctionApp,  // max, Q, U applied to arguments
  Comparison,   // >= ; only valid as the root of an acceptance condition
};

enum class FuncKind {
  Max,         // threshold combinator
  Quantile,    // Q over the utilities of opponent offers received so far
  OwnUtility,  // the agent's own utility function U
  EstUtility,  // estimated opponent utility; reserved for future grammar
};

enum class SymbolKind {
  Offer,           // the incoming opponent offer
  NextOwn,         // the bid the agent plans to propose next
  DynThreshold,    // externally supplied time-varying threshold u_dyn
  FixedThreshold,  // configuration-supplied fixed threshold u_fixed
};

enum class CmpKind { Ge };

struct MathExpr;
using ExprPtr = std::shared_ptr<const MathExpr>;

/// Immutable expression tree node. Children are shared, never mutated.
struct MathExpr {
  ExprKind kind;
  double value = 0.0;                  // Constant
  SymbolKind symbol = SymbolKind::Offer;
  FuncKind func = FuncKind::Max;
  CmpKind cmp = CmpKind::Ge;
  std::vector<ExprPtr> children;
};

ExprPtr make_constant(double v);
ExprPtr make_time();
ExprPtr make_symbol(SymbolKind s);
ExprPtr make_sum(std::vector<ExprPtr> terms);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_func(FuncKind f, std::vector<ExprPtr> args);
ExprPtr make_comparison(ExprPtr lhs, ExprPtr rhs);

/// Canonical slope/intercept form of a*t + b.
struct LinearTerm {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Builds the canonical tree for a*t + b (constant-only when slope is 0).
ExprPtr make_linear(double slope, double intercept);

/// Recognizes the canonical linear shapes; nullopt for anything else.
std::optional<LinearTerm> as_linear(const MathExpr& e);

bool structural_equal(const MathExpr& a, const MathExpr& b);
bool structural_equal(const ExprPtr& a, const ExprPtr& b);

std::string func_name(FuncKind f);
std::string symbol_name(SymbolKind s);

/// Checks tree invariants: finite constants, Q arity/linearity, comparisons
/// only at the root. Throws StructureError on violation.
void check_expr(const MathExpr& root);

}  // namespace nst
