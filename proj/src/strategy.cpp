#include "nst/strategy.hpp"

#include <cmath>
#include <utility>

#include "nst/errors.hpp"
#include "nst/printer.hpp"

namespace nst {

namespace {

ExprPtr tactic_expr(const AcceptanceTactic& tactic) {
  if (std::holds_alternative<OwnNextBidUtility>(tactic)) {
    return make_func(FuncKind::OwnUtility, {make_symbol(SymbolKind::NextOwn)});
  }
  if (const auto* q = std::get_if<QuantileConcession>(&tactic)) {
    return make_func(FuncKind::Quantile, {make_linear(q->slope, q->intercept)});
  }
  if (std::holds_alternative<DynamicThreshold>(tactic)) {
    return make_symbol(SymbolKind::DynThreshold);
  }
  const auto& fixed = std::get<FixedThreshold>(tactic);
  if (fixed.symbolic) return make_symbol(SymbolKind::FixedThreshold);
  return make_constant(fixed.value);
}

AcceptanceTactic tactic_from_expr(const MathExpr& e, double fixed_default) {
  switch (e.kind) {
    case ExprKind::Symbol:
      if (e.symbol == SymbolKind::DynThreshold) return DynamicThreshold{};
      if (e.symbol == SymbolKind::FixedThreshold) return FixedThreshold{fixed_default, true};
      break;
    case ExprKind::Constant:
      return FixedThreshold{e.value, false};
    case ExprKind::FunctionApp:
      if (e.func == FuncKind::Quantile && e.children.size() == 1) {
        auto lin = as_linear(*e.children[0]);
        if (lin) return QuantileConcession{lin->slope, lin->intercept};
      }
      if (e.func == FuncKind::OwnUtility && e.children.size() == 1 &&
          e.children[0]->kind == ExprKind::Symbol &&
          e.children[0]->symbol == SymbolKind::NextOwn) {
        return OwnNextBidUtility{};
      }
      break;
    default:
      break;
  }
  throw StructureError("threshold expression is not a recognized acceptance tactic: " +
                       render_expr(e));
}

}  // namespace

ExprPtr build_condition(const std::vector<AcceptanceTactic>& tactics) {
  if (tactics.empty()) throw StructureError("acceptance phase needs at least one tactic");
  ExprPtr lhs = make_func(FuncKind::OwnUtility, {make_symbol(SymbolKind::Offer)});
  ExprPtr rhs;
  if (tactics.size() == 1) {
    rhs = tactic_expr(tactics.front());
  } else {
    std::vector<ExprPtr> args;
    args.reserve(tactics.size());
    for (const AcceptanceTactic& t : tactics) args.push_back(tactic_expr(t));
    rhs = make_func(FuncKind::Max, std::move(args));
  }
  return make_comparison(std::move(lhs), std::move(rhs));
}

std::vector<AcceptanceTactic> extract_tactics(const MathExpr& condition, double fixed_default) {
  if (condition.kind != ExprKind::Comparison || condition.children.size() != 2) {
    throw StructureError("acceptance condition must be a single >= comparison");
  }
  const MathExpr& lhs = *condition.children[0];
  if (lhs.kind != ExprKind::FunctionApp || lhs.func != FuncKind::OwnUtility ||
      lhs.children.size() != 1 || lhs.children[0]->kind != ExprKind::Symbol ||
      lhs.children[0]->symbol != SymbolKind::Offer) {
    throw StructureError("acceptance condition must compare U(offer) against thresholds");
  }
  const MathExpr& rhs = *condition.children[1];
  std::vector<AcceptanceTactic> tactics;
  if (rhs.kind == ExprKind::FunctionApp && rhs.func == FuncKind::Max) {
    for (const ExprPtr& arg : rhs.children) tactics.push_back(tactic_from_expr(*arg, fixed_default));
  } else {
    tactics.push_back(tactic_from_expr(rhs, fixed_default));
  }
  return tactics;
}

Phase make_acceptance_phase(double t_start, double t_end,
                            std::vector<AcceptanceTactic> tactics) {
  Phase p;
  p.t_start = t_start;
  p.t_end = t_end;
  p.condition = build_condition(tactics);
  p.accept_tactics = std::move(tactics);
  return p;
}

Phase make_bidding_phase(double t_start, double t_end, std::vector<BidChoice> bids) {
  Phase p;
  p.t_start = t_start;
  p.t_end = t_end;
  p.bids = std::move(bids);
  return p;
}

namespace {

void check_tactic(const AcceptanceTactic& tactic) {
  if (const auto* fixed = std::get_if<FixedThreshold>(&tactic)) {
    if (!(fixed->value >= 0.0 && fixed->value <= 1.0)) {
      throw StructureError("fixed threshold " + render_number(fixed->value) +
                           " outside [0, 1]");
    }
  }
  if (const auto* q = std::get_if<QuantileConcession>(&tactic)) {
    if (!std::isfinite(q->slope) || !std::isfinite(q->intercept)) {
      throw StructureError("quantile parameters must be finite");
    }
  }
}

void check_bid_tactic(const BiddingTactic& tactic) {
  if (const auto* b = std::get_if<BoulwareBid>(&tactic)) {
    if (!(b->e > 0.0)) throw StructureError("boulware exponent must be > 0");
    if (!(b->u_min >= 0.0 && b->u_min < b->u_max && b->u_max <= 1.0)) {
      throw StructureError("boulware utility bounds must satisfy 0 <= u_min < u_max <= 1");
    }
  }
  if (const auto* p = std::get_if<ParetoWeightedBid>(&tactic)) {
    if (!std::isfinite(p->slope) || !std::isfinite(p->intercept)) {
      throw StructureError("pareto weight parameters must be finite");
    }
  }
}

}  // namespace

void check_template(const StrategyTemplate& tmpl) {
  if (tmpl.phases.empty()) throw StructureError("template needs at least one phase");
  const Phase& first = tmpl.phases.front();
  const Phase& last = tmpl.phases.back();
  if (first.t_start != 0.0) {
    throw StructureError("first phase must start at 0, found " + render_number(first.t_start));
  }
  if (last.t_end != 1.0) {
    throw StructureError("last phase must end at 1, found " + render_number(last.t_end));
  }
  for (std::size_t i = 0; i < tmpl.phases.size(); ++i) {
    const Phase& p = tmpl.phases[i];
    if (!(p.t_start >= 0.0 && p.t_end <= 1.0 && p.t_start < p.t_end)) {
      throw StructureError("phase interval [" + render_number(p.t_start) + ", " +
                           render_number(p.t_end) + ") is not a forward slice of [0, 1]");
    }
    if (i + 1 < tmpl.phases.size() && p.t_end != tmpl.phases[i + 1].t_start) {
      const double boundary = p.t_end;
      throw StructureError("phases do not tile [0, 1]: gap or overlap at " +
                           render_number(boundary));
    }
    if (tmpl.kind == TemplateKind::Acceptance) {
      if (!p.condition || !p.bids.empty()) {
        throw StructureError("acceptance template phase must hold exactly one accept rule");
      }
      check_expr(*p.condition);
      auto derived = extract_tactics(*p.condition, tmpl.fixed_threshold_default);
      if (derived.size() != p.accept_tactics.size()) {
        throw StructureError("acceptance tactic view out of sync with condition tree");
      }
      for (std::size_t j = 0; j < derived.size(); ++j) {
        if (!tactic_equal(derived[j], p.accept_tactics[j])) {
          throw StructureError("acceptance tactic view out of sync with condition tree");
        }
        check_tactic(p.accept_tactics[j]);
      }
    } else {
      if (p.condition || p.bids.empty()) {
        throw StructureError("bidding template phase must hold bid rules only");
      }
      bool any_selected = false;
      for (const BidChoice& choice : p.bids) {
        check_bid_tactic(choice.tactic);
        any_selected = any_selected || choice.selected;
      }
      if (!any_selected) throw StructureError("phase needs at least one selected tactic");
    }
  }
}

std::size_t phase_index_at(const StrategyTemplate& tmpl, double t) {
  for (std::size_t i = 0; i + 1 < tmpl.phases.size(); ++i) {
    if (t >= tmpl.phases[i].t_start && t < tmpl.phases[i].t_end) return i;
  }
  return tmpl.phases.size() - 1;
}

const Phase& phase_at(const StrategyTemplate& tmpl, double t) {
  return tmpl.phases[phase_index_at(tmpl, t)];
}

bool tactic_equal(const AcceptanceTactic& a, const AcceptanceTactic& b) {
  if (a.index() != b.index()) return false;
  if (const auto* q = std::get_if<QuantileConcession>(&a)) {
    const auto& o = std::get<QuantileConcession>(b);
    return q->slope == o.slope && q->intercept == o.intercept;
  }
  if (const auto* f = std::get_if<FixedThreshold>(&a)) {
    const auto& o = std::get<FixedThreshold>(b);
    return f->value == o.value && f->symbolic == o.symbolic;
  }
  return true;
}

bool tactic_equal(const BiddingTactic& a, const BiddingTactic& b) {
  if (a.index() != b.index()) return false;
  if (const auto* bo = std::get_if<BoulwareBid>(&a)) {
    const auto& o = std::get<BoulwareBid>(b);
    if (bo->explicit_params != o.explicit_params) return false;
    if (!bo->explicit_params) return true;
    return bo->e == o.e && bo->u_min == o.u_min && bo->u_max == o.u_max;
  }
  if (const auto* p = std::get_if<ParetoWeightedBid>(&a)) {
    const auto& o = std::get<ParetoWeightedBid>(b);
    return p->slope == o.slope && p->intercept == o.intercept;
  }
  return true;
}

bool structural_equal(const StrategyTemplate& a, const StrategyTemplate& b) {
  if (a.kind != b.kind || a.name != b.name || a.phases.size() != b.phases.size()) return false;
  for (std::size_t i = 0; i < a.phases.size(); ++i) {
    const Phase& pa = a.phases[i];
    const Phase& pb = b.phases[i];
    if (pa.t_start != pb.t_start || pa.t_end != pb.t_end) return false;
    if (!structural_equal(pa.condition, pb.condition)) return false;
    if (pa.accept_tactics.size() != pb.accept_tactics.size()) return false;
    for (std::size_t j = 0; j < pa.accept_tactics.size(); ++j) {
      if (!tactic_equal(pa.accept_tactics[j], pb.accept_tactics[j])) return false;
    }
    if (pa.bids.size() != pb.bids.size()) return false;
    for (std::size_t j = 0; j < pa.bids.size(); ++j) {
      if (pa.bids[j].selected != pb.bids[j].selected) return false;
      if (!tactic_equal(pa.bids[j].tactic, pb.bids[j].tactic)) return false;
    }
  }
  return true;
}

}  // namespace nst
