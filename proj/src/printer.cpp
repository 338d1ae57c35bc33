#include "nst/printer.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "nst/errors.hpp"

namespace nst {

std::string render_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string render_fixed2(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return std::string(buf.data());
}

std::string render_linear(double slope, double intercept) {
  if (slope == 0.0) return render_number(intercept);
  std::string out = render_number(slope) + "*t";
  if (intercept != 0.0) out += " + " + render_number(intercept);
  return out;
}

std::string render_expr(const MathExpr& e) {
  switch (e.kind) {
    case ExprKind::Constant:
      return render_number(e.value);
    case ExprKind::TimeSymbol:
      return "t";
    case ExprKind::Symbol:
      return symbol_name(e.symbol);
    case ExprKind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " + ";
        out += render_expr(*e.children[i]);
      }
      return out;
    }
    case ExprKind::Product: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += "*";
        out += render_expr(*e.children[i]);
      }
      return out;
    }
    case ExprKind::FunctionApp: {
      std::string out = func_name(e.func) + "(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        out += render_expr(*e.children[i]);
      }
      return out + ")";
    }
    case ExprKind::Comparison:
      return render_expr(*e.children[0]) + " >= " + render_expr(*e.children[1]);
  }
  return "?";
}

namespace {

std::string render_bid_tactic(const BiddingTactic& tactic) {
  if (const auto* b = std::get_if<BoulwareBid>(&tactic)) {
    if (!b->explicit_params) return "boulware";
    return "boulware(" + render_number(b->e) + ", " + render_number(b->u_min) + ", " +
           render_number(b->u_max) + ")";
  }
  if (const auto* p = std::get_if<ParetoWeightedBid>(&tactic)) {
    return "pareto(" + render_linear(p->slope, p->intercept) + ")";
  }
  if (std::holds_alternative<OpponentGreedyBid>(tactic)) return "opponent_greedy";
  return "random_above_threshold";
}

}  // namespace

std::string pretty_print(const StrategyTemplate& tmpl) {
  std::ostringstream out;
  out << (tmpl.kind == TemplateKind::Acceptance ? "acceptance" : "bidding");
  out << " template \"" << tmpl.name << "\" {\n";
  for (std::size_t i = 0; i < tmpl.phases.size(); ++i) {
    const Phase& p = tmpl.phases[i];
    const bool final_phase = i + 1 == tmpl.phases.size();
    out << "  phase [" << render_number(p.t_start) << ", " << render_number(p.t_end)
        << (final_phase ? "]" : ")") << " {\n";
    if (tmpl.kind == TemplateKind::Acceptance) {
      out << "    accept if " << render_expr(*p.condition) << "\n";
    } else {
      for (const BidChoice& choice : p.bids) {
        if (!choice.selected) continue;  // the DSL carries selected tactics only
        out << "    bid " << render_bid_tactic(choice.tactic) << "\n";
      }
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace nst
