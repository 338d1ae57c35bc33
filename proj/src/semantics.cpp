#include "nst/semantics.hpp"

#include <cmath>

#include "nst/errors.hpp"
#include "nst/printer.hpp"

namespace nst {

std::string role_kind_name(RoleKind kind) {
  switch (kind) {
    case RoleKind::TimePhase: return "TimePhase";
    case RoleKind::OfferUtility: return "OfferUtility";
    case RoleKind::OwnPlannedBidUtility: return "OwnPlannedBidUtility";
    case RoleKind::ConcessionQuantile: return "ConcessionQuantile";
    case RoleKind::DynamicThreshold: return "DynamicThreshold";
    case RoleKind::FixedThreshold: return "FixedThreshold";
    case RoleKind::ThresholdCombinator: return "ThresholdCombinator";
    case RoleKind::LinearTimeTerm: return "LinearTimeTerm";
    case RoleKind::AcceptPredicate: return "AcceptPredicate";
    case RoleKind::BidDirective: return "BidDirective";
  }
  return "?";
}

RoleKind role_kind_from_name(const std::string& name) {
  for (int i = 0; i < kRoleKindCount; ++i) {
    const auto kind = static_cast<RoleKind>(i);
    if (role_kind_name(kind) == name) return kind;
  }
  throw UnknownConstructError("unknown semantic role kind: " + name);
}

double round_percent(double fraction) {
  return std::floor(fraction * 100.0 * 100.0 + 0.5) / 100.0;
}

AttrMap interval_phrase(const Phase& phase) {
  AttrMap attrs;
  attrs["percentStart"] = round_percent(phase.t_start);
  attrs["percentEnd"] = round_percent(phase.t_end);
  if (phase.t_start == 0.0) attrs["isInitial"] = true;
  if (phase.t_end == 1.0) attrs["isFinal"] = true;
  return attrs;
}

std::string attr_to_string(const AttrValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return render_number(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::get<bool>(v) ? "true" : "false";
}

namespace {

std::string direction_of(double slope) {
  if (std::abs(slope) < 1e-9) return "flat";
  return slope > 0.0 ? "rising" : "falling";
}

void annotate_linear_parts(const MathExpr& e, const std::string& path, SemanticRep& rep);

// Roles for every node of an acceptance condition subtree.
void annotate_expr(const MathExpr& e, const std::string& path, const AttrMap& phase_attrs,
                   double fixed_default, SemanticRep& rep) {
  SemanticRole role;
  switch (e.kind) {
    case ExprKind::Comparison: {
      role.kind = RoleKind::AcceptPredicate;
      role.attrs = phase_attrs;
      const MathExpr& rhs = *e.children[1];
      const bool combinator = rhs.kind == ExprKind::FunctionApp && rhs.func == FuncKind::Max;
      if (combinator) role.attrs["hasCombinator"] = true;
      rep.roles[path] = role;
      annotate_expr(*e.children[0], path + "/lhs", phase_attrs, fixed_default, rep);
      annotate_expr(*e.children[1], path + "/rhs", phase_attrs, fixed_default, rep);
      return;
    }
    case ExprKind::FunctionApp: {
      if (e.func == FuncKind::Max) {
        role.kind = RoleKind::ThresholdCombinator;
        role.attrs["argCount"] = static_cast<double>(e.children.size());
        rep.roles[path] = role;
        for (std::size_t i = 0; i < e.children.size(); ++i) {
          annotate_expr(*e.children[i], path + "/args/" + std::to_string(i), phase_attrs,
                        fixed_default, rep);
        }
        return;
      }
      if (e.func == FuncKind::Quantile) {
        const auto lin = as_linear(*e.children[0]);
        if (!lin) throw UnknownConstructError("Q argument is not linear at " + path);
        role.kind = RoleKind::ConcessionQuantile;
        role.attrs["slope"] = lin->slope;
        role.attrs["intercept"] = lin->intercept;
        role.attrs["slopeDirection"] = direction_of(lin->slope);
        role.attrs["linear"] = render_linear(lin->slope, lin->intercept);
        rep.roles[path] = role;
        annotate_linear_parts(*e.children[0], path + "/args/0", rep);
        return;
      }
      if (e.func == FuncKind::OwnUtility) {
        const MathExpr& arg = *e.children[0];
        if (arg.kind == ExprKind::Symbol && arg.symbol == SymbolKind::NextOwn) {
          role.kind = RoleKind::OwnPlannedBidUtility;
        } else {
          role.kind = RoleKind::OfferUtility;
          role.attrs = phase_attrs;
        }
        rep.roles[path] = role;
        SemanticRole arg_role;
        arg_role.kind = role.kind;
        arg_role.attrs["part"] = std::string("argument");
        rep.roles[path + "/args/0"] = arg_role;
        return;
      }
      throw UnknownConstructError("no semantic rule for function " + func_name(e.func));
    }
    case ExprKind::Symbol: {
      if (e.symbol == SymbolKind::DynThreshold) {
        role.kind = RoleKind::DynamicThreshold;
      } else if (e.symbol == SymbolKind::FixedThreshold) {
        role.kind = RoleKind::FixedThreshold;
        role.attrs["symbolic"] = true;
        role.attrs["value"] = fixed_default;
      } else {
        throw UnknownConstructError("no semantic rule for bare symbol " + symbol_name(e.symbol));
      }
      rep.roles[path] = role;
      return;
    }
    case ExprKind::Constant: {
      role.kind = RoleKind::FixedThreshold;
      role.attrs["value"] = e.value;
      rep.roles[path] = role;
      return;
    }
    default:
      throw UnknownConstructError("no semantic rule for node at " + path);
  }
}

// Inner nodes of a linear term a*t + b, all tagged LinearTimeTerm.
void annotate_linear_parts(const MathExpr& e, const std::string& path, SemanticRep& rep) {
  SemanticRole role;
  role.kind = RoleKind::LinearTimeTerm;
  const auto lin = as_linear(e);
  if (lin) {
    role.attrs["slope"] = lin->slope;
    role.attrs["intercept"] = lin->intercept;
    role.attrs["slopeDirection"] = direction_of(lin->slope);
    role.attrs["linear"] = render_linear(lin->slope, lin->intercept);
  } else {
    role.attrs["part"] = std::string("component");
  }
  rep.roles[path] = role;
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    annotate_linear_parts(*e.children[i], path + "/args/" + std::to_string(i), rep);
  }
}

std::string bid_tactic_tag(const BiddingTactic& tactic) {
  if (std::holds_alternative<BoulwareBid>(tactic)) return "boulware";
  if (std::holds_alternative<ParetoWeightedBid>(tactic)) return "pareto";
  if (std::holds_alternative<OpponentGreedyBid>(tactic)) return "opponent_greedy";
  return "random_above_threshold";
}

void enumerate_expr(const MathExpr& e, const std::string& path, std::vector<std::string>& out) {
  out.push_back(path);
  if (e.kind == ExprKind::Comparison) {
    enumerate_expr(*e.children[0], path + "/lhs", out);
    enumerate_expr(*e.children[1], path + "/rhs", out);
    return;
  }
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    enumerate_expr(*e.children[i], path + "/args/" + std::to_string(i), out);
  }
}

}  // namespace

std::vector<std::string> enumerate_nodes(const StrategyTemplate& tmpl) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tmpl.phases.size(); ++i) {
    const std::string base = "/phases/" + std::to_string(i);
    out.push_back(base);
    const Phase& p = tmpl.phases[i];
    if (p.condition) enumerate_expr(*p.condition, base + "/cond", out);
    for (std::size_t j = 0; j < p.bids.size(); ++j) {
      out.push_back(base + "/bids/" + std::to_string(j));
    }
  }
  return out;
}

SemanticRep annotate(const StrategyTemplate& tmpl) {
  SemanticRep rep;
  rep.template_kind = tmpl.kind;
  rep.template_name = tmpl.name;
  for (std::size_t i = 0; i < tmpl.phases.size(); ++i) {
    const Phase& p = tmpl.phases[i];
    const std::string base = "/phases/" + std::to_string(i);
    SemanticRole phase_role;
    phase_role.kind = RoleKind::TimePhase;
    phase_role.attrs = interval_phrase(p);
    rep.roles[base] = phase_role;

    if (p.condition) {
      annotate_expr(*p.condition, base + "/cond", phase_role.attrs,
                    tmpl.fixed_threshold_default, rep);
    }
    for (std::size_t j = 0; j < p.bids.size(); ++j) {
      const BidChoice& choice = p.bids[j];
      SemanticRole role;
      role.kind = RoleKind::BidDirective;
      role.attrs["tactic"] = bid_tactic_tag(choice.tactic);
      role.attrs["priority"] = static_cast<double>(j);
      if (choice.selected) role.attrs["selected"] = true;
      if (const auto* b = std::get_if<BoulwareBid>(&choice.tactic)) {
        if (b->explicit_params) {
          role.attrs["explicitParams"] = true;
          role.attrs["e"] = b->e;
          role.attrs["uMin"] = b->u_min;
          role.attrs["uMax"] = b->u_max;
        }
      } else if (const auto* pw = std::get_if<ParetoWeightedBid>(&choice.tactic)) {
        role.attrs["slope"] = pw->slope;
        role.attrs["intercept"] = pw->intercept;
        role.attrs["slopeDirection"] = direction_of(pw->slope);
        role.attrs["linear"] = render_linear(pw->slope, pw->intercept);
      }
      rep.roles[base + "/bids/" + std::to_string(j)] = role;
    }
  }
  return rep;
}

}  // namespace nst
