#include "nst/expr.hpp"

#include <cmath>
#include <utility>

#include "nst/errors.hpp"

namespace nst {

namespace {

ExprPtr make_node(MathExpr node) { return std::make_shared<const MathExpr>(std::move(node)); }

// Normalizes -0.0 so canonical printing and equality behave.
double clean(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

ExprPtr make_constant(double v) {
  MathExpr e;
  e.kind = ExprKind::Constant;
  e.value = clean(v);
  return make_node(std::move(e));
}

ExprPtr make_time() {
  MathExpr e;
  e.kind = ExprKind::TimeSymbol;
  return make_node(std::move(e));
}

ExprPtr make_symbol(SymbolKind s) {
  MathExpr e;
  e.kind = ExprKind::Symbol;
  e.symbol = s;
  return make_node(std::move(e));
}

ExprPtr make_sum(std::vector<ExprPtr> terms) {
  MathExpr e;
  e.kind = ExprKind::Sum;
  e.children = std::move(terms);
  return make_node(std::move(e));
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
  MathExpr e;
  e.kind = ExprKind::Product;
  e.children = std::move(factors);
  return make_node(std::move(e));
}

ExprPtr make_func(FuncKind f, std::vector<ExprPtr> args) {
  MathExpr e;
  e.kind = ExprKind::FunctionApp;
  e.func = f;
  e.children = std::move(args);
  return make_node(std::move(e));
}

ExprPtr make_comparison(ExprPtr lhs, ExprPtr rhs) {
  MathExpr e;
  e.kind = ExprKind::Comparison;
  e.cmp = CmpKind::Ge;
  e.children = {std::move(lhs), std::move(rhs)};
  return make_node(std::move(e));
}

ExprPtr make_linear(double slope, double intercept) {
  slope = clean(slope);
  intercept = clean(intercept);
  if (slope == 0.0) return make_constant(intercept);
  ExprPtr scaled = make_product({make_constant(slope), make_time()});
  if (intercept == 0.0) return scaled;
  return make_sum({scaled, make_constant(intercept)});
}

std::optional<LinearTerm> as_linear(const MathExpr& e) {
  switch (e.kind) {
    case ExprKind::Constant:
      return LinearTerm{0.0, e.value};
    case ExprKind::Product: {
      if (e.children.size() != 2) return std::nullopt;
      const MathExpr& a = *e.children[0];
      const MathExpr& t = *e.children[1];
      if (a.kind != ExprKind::Constant || t.kind != ExprKind::TimeSymbol) return std::nullopt;
      return LinearTerm{a.value, 0.0};
    }
    case ExprKind::Sum: {
      if (e.children.size() != 2) return std::nullopt;
      const MathExpr& scaled = *e.children[0];
      const MathExpr& b = *e.children[1];
      if (b.kind != ExprKind::Constant) return std::nullopt;
      auto head = as_linear(scaled);
      if (!head || head->intercept != 0.0 || scaled.kind == ExprKind::Constant) return std::nullopt;
      return LinearTerm{head->slope, b.value};
    }
    default:
      return std::nullopt;
  }
}

bool structural_equal(const MathExpr& a, const MathExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Constant:
      if (a.value != b.value) return false;
      break;
    case ExprKind::Symbol:
      if (a.symbol != b.symbol) return false;
      break;
    case ExprKind::FunctionApp:
      if (a.func != b.func) return false;
      break;
    case ExprKind::Comparison:
      if (a.cmp != b.cmp) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structural_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

bool structural_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return static_cast<bool>(a) == static_cast<bool>(b);
  return structural_equal(*a, *b);
}

std::string func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Max: return "max";
    case FuncKind::Quantile: return "Q";
    case FuncKind::OwnUtility: return "U";
    case FuncKind::EstUtility: return "U_est";
  }
  return "?";
}

std::string symbol_name(SymbolKind s) {
  switch (s) {
    case SymbolKind::Offer: return "offer";
    case SymbolKind::NextOwn: return "next_own";
    case SymbolKind::DynThreshold: return "u_dyn";
    case SymbolKind::FixedThreshold: return "u_fixed";
  }
  return "?";
}

namespace {

void check_node(const MathExpr& e, bool is_root) {
  if (e.kind == ExprKind::Comparison && !is_root) {
    throw StructureError("comparison may appear only at the root of an acceptance condition");
  }
  switch (e.kind) {
    case ExprKind::Constant:
      if (!std::isfinite(e.value)) throw StructureError("non-finite constant in expression");
      break;
    case ExprKind::Sum:
    case ExprKind::Product:
      if (e.children.size() < 2) throw StructureError("sum/product needs at least two children");
      break;
    case ExprKind::FunctionApp:
      if (e.func == FuncKind::Quantile) {
        if (e.children.size() != 1) throw StructureError("Q takes exactly one argument");
        if (!as_linear(*e.children[0])) {
          throw StructureError("the argument of Q must be a linear term a*t + b");
        }
      } else if (e.func == FuncKind::Max) {
        if (e.children.size() < 2) throw StructureError("max needs at least two arguments");
      } else {
        if (e.children.size() != 1) throw StructureError("utility functions take one argument");
      }
      break;
    case ExprKind::Comparison:
      if (e.children.size() != 2) throw StructureError("comparison needs two operands");
      break;
    default:
      break;
  }
  for (const ExprPtr& c : e.children) check_node(*c, false);
}

}  // namespace

void check_expr(const MathExpr& root) { check_node(root, true); }

}  // namespace nst
