#include "nst/engine.hpp"

#include <algorithm>
#include <cmath>

#include "nst/errors.hpp"

namespace nst {

std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw EngineError("draw_below needs a non-empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

double empirical_quantile(std::vector<double> utilities, double p) {
  if (utilities.empty()) throw EmptyHistoryError("no utilities to take a quantile of");
  p = std::clamp(p, 0.0, 1.0);
  std::sort(utilities.begin(), utilities.end(), std::greater<double>());
  const auto n = static_cast<double>(utilities.size());
  const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(p * n)));
  return utilities[rank - 1];
}

double boulware_target(double t, double e, double u_min, double u_max) {
  return u_min + (u_max - u_min) * (1.0 - std::pow(t, 1.0 / e));
}

std::vector<double> acceptance_thresholds(const StrategyTemplate& tmpl, const AgentState& state,
                                          const UtilityModel& own,
                                          const NegotiationDomain& domain) {
  const Phase& phase = phase_at(tmpl, state.t);
  std::vector<double> thresholds;
  thresholds.reserve(phase.accept_tactics.size());
  for (const AcceptanceTactic& tactic : phase.accept_tactics) {
    if (std::holds_alternative<OwnNextBidUtility>(tactic)) {
      // No planned bid yet: demand the maximum rather than guess.
      thresholds.push_back(state.planned_bid ? utility(own, *state.planned_bid, domain) : 1.0);
    } else if (const auto* q = std::get_if<QuantileConcession>(&tactic)) {
      if (state.opponent_history.empty()) {
        thresholds.push_back(1.0);  // no information: do not concede
      } else {
        std::vector<double> utilities;
        utilities.reserve(state.opponent_history.size());
        for (const Bid& bid : state.opponent_history) {
          utilities.push_back(utility(own, bid, domain));
        }
        thresholds.push_back(empirical_quantile(std::move(utilities),
                                                q->slope * state.t + q->intercept));
      }
    } else if (std::holds_alternative<DynamicThreshold>(tactic)) {
      thresholds.push_back(state.dynamic_threshold);
    } else {
      thresholds.push_back(std::get<FixedThreshold>(tactic).value);
    }
  }
  return thresholds;
}

bool evaluate_acceptance(const StrategyTemplate& tmpl, const AgentState& state,
                         const Bid& offer, const UtilityModel& own,
                         const NegotiationDomain& domain) {
  if (tmpl.kind != TemplateKind::Acceptance) {
    throw ConfigError("evaluate_acceptance needs an acceptance template");
  }
  const std::vector<double> thresholds = acceptance_thresholds(tmpl, state, own, domain);
  double bar = 0.0;
  for (double th : thresholds) bar = std::max(bar, th);
  return utility(own, offer, domain) >= bar;
}

std::vector<std::pair<double, Bid>> sort_bids_by_utility(const NegotiationDomain& domain,
                                                         const UtilityModel& model) {
  std::vector<std::pair<double, Bid>> out;
  for (Bid& bid : enumerate_bids(domain)) {
    const double u = utility(model, bid, domain);
    out.emplace_back(u, std::move(bid));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

std::vector<Bid> pareto_front(const NegotiationDomain& domain, const UtilityModel& own,
                              const OpponentUtilityFn& opp) {
  struct Point {
    double u_own;
    double u_opp;
    Bid bid;
  };
  std::vector<Point> points;
  for (Bid& bid : enumerate_bids(domain)) {
    Point p{utility(own, bid, domain), opp(bid), std::move(bid)};
    points.push_back(std::move(p));
  }
  // Sweep in descending own utility; within an equal-own group only the bids
  // at the group's best opponent utility can survive, and only if that tops
  // every strictly-better-own point seen so far.
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    if (a.u_own != b.u_own) return a.u_own > b.u_own;
    if (a.u_opp != b.u_opp) return a.u_opp > b.u_opp;
    return a.bid < b.bid;
  });
  std::vector<Bid> front;
  double best_opp_before = -1.0;
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j < points.size() && points[j].u_own == points[i].u_own) ++j;
    const double group_best = points[i].u_opp;
    if (group_best > best_opp_before) {
      for (std::size_t k = i; k < j && points[k].u_opp == group_best; ++k) {
        front.push_back(points[k].bid);
      }
      best_opp_before = group_best;
    }
    i = j;
  }
  std::sort(front.begin(), front.end());
  return front;
}

Bid topsis_select(const std::vector<Bid>& front, double w, const UtilityModel& own,
                  const OpponentUtilityFn& opp, const NegotiationDomain& domain) {
  if (front.empty()) throw EngineError("topsis_select needs a non-empty front");
  w = std::clamp(w, 0.0, 1.0);

  std::vector<double> col_own, col_opp;
  col_own.reserve(front.size());
  col_opp.reserve(front.size());
  for (const Bid& bid : front) {
    col_own.push_back(utility(own, bid, domain));
    col_opp.push_back(opp(bid));
  }
  auto normalize = [](std::vector<double>& col) {
    double norm = 0.0;
    for (double v : col) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (double& v : col) v /= norm;
    }
  };
  normalize(col_own);
  normalize(col_opp);
  for (double& v : col_own) v *= w;
  for (double& v : col_opp) v *= 1.0 - w;

  double ideal_own = col_own[0], worst_own = col_own[0];
  double ideal_opp = col_opp[0], worst_opp = col_opp[0];
  for (std::size_t i = 1; i < front.size(); ++i) {
    ideal_own = std::max(ideal_own, col_own[i]);
    worst_own = std::min(worst_own, col_own[i]);
    ideal_opp = std::max(ideal_opp, col_opp[i]);
    worst_opp = std::min(worst_opp, col_opp[i]);
  }

  constexpr double kTieEps = 1e-9;
  std::size_t best = 0;
  double best_closeness = -1.0;
  double best_dplus = 0.0;
  double best_own_u = -1.0;
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double dplus = std::hypot(col_own[i] - ideal_own, col_opp[i] - ideal_opp);
    const double dminus = std::hypot(col_own[i] - worst_own, col_opp[i] - worst_opp);
    const double denom = dplus + dminus;
    const double closeness = denom == 0.0 ? 1.0 : dminus / denom;
    const double own_u = utility(own, front[i], domain);

    bool better = false;
    if (closeness > best_closeness + kTieEps) {
      better = true;
    } else if (closeness > best_closeness - kTieEps) {
      // numerically tied on closeness: prefer the bid nearer the ideal,
      // then the one better for us, then the earlier (lexically smaller) bid
      if (dplus < best_dplus - kTieEps) {
        better = true;
      } else if (dplus < best_dplus + kTieEps && own_u > best_own_u) {
        better = true;
      }
    }
    if (i == 0 || better) {
      best = i;
      best_closeness = closeness;
      best_dplus = dplus;
      best_own_u = own_u;
    }
  }
  return front[best];
}

Bid opponent_greedy(const Bid& last, const UtilityModel& own, const NegotiationDomain& domain,
                    Rng& rng) {
  check_bid(last, domain);
  std::size_t target = 0;
  for (std::size_t i = 1; i < own.weights.size(); ++i) {
    if (own.weights[i] < own.weights[target]) target = i;  // ties keep the lower index
  }
  const auto value_count = static_cast<std::uint64_t>(domain.issues[target].values.size());
  // resample among the other values so the bid always changes
  const std::uint64_t pick = draw_below(rng, value_count - 1);
  Bid out = last;
  const auto current = static_cast<std::uint64_t>(last.values[target]);
  out.values[target] = static_cast<int>(pick >= current ? pick + 1 : pick);
  return out;
}

namespace {

Bid boulware_bid(double t, const BoulwareBid& tactic, const BidContext& ctx) {
  const double e = tactic.explicit_params ? tactic.e : ctx.boulware_defaults.e;
  const double u_min = tactic.explicit_params ? tactic.u_min : ctx.boulware_defaults.u_min;
  const double u_max = tactic.explicit_params ? tactic.u_max : ctx.boulware_defaults.u_max;
  const double target = boulware_target(t, e, u_min, u_max);
  // smallest own utility at or above the target, else the best available bid
  const auto& sorted = ctx.sorted_by_own;
  auto it = std::lower_bound(sorted.begin(), sorted.end(), target,
                             [](const auto& entry, double value) { return entry.first < value; });
  if (it == sorted.end()) return sorted.back().second;
  return it->second;
}

}  // namespace

Bid select_bid(const StrategyTemplate& tmpl, const AgentState& state, const BidContext& ctx,
               Rng& rng) {
  if (tmpl.kind != TemplateKind::Bidding) {
    throw ConfigError("select_bid needs a bidding template");
  }
  const Phase& phase = phase_at(tmpl, state.t);
  const BidChoice* chosen = nullptr;
  for (const BidChoice& choice : phase.bids) {
    if (choice.selected) {
      chosen = &choice;
      break;
    }
  }
  if (!chosen) throw ConfigError("phase has no selected bidding tactic");

  if (const auto* b = std::get_if<BoulwareBid>(&chosen->tactic)) {
    return boulware_bid(state.t, *b, ctx);
  }
  if (const auto* p = std::get_if<ParetoWeightedBid>(&chosen->tactic)) {
    const double w = std::clamp(p->slope * state.t + p->intercept, 0.0, 1.0);
    // TODO: cache the front per opponent-model revision; under an evolving
    // frequency model it is recomputed on every turn.
    const std::vector<Bid> front = pareto_front(ctx.domain, ctx.own, ctx.opponent);
    return topsis_select(front, w, ctx.own, ctx.opponent, ctx.domain);
  }
  if (std::holds_alternative<OpponentGreedyBid>(chosen->tactic)) {
    if (state.opponent_history.empty()) {
      return boulware_bid(state.t, BoulwareBid{}, ctx);
    }
    return opponent_greedy(state.opponent_history.back(), ctx.own, ctx.domain, rng);
  }
  // random bid above the dynamic threshold (own utility)
  const auto& sorted = ctx.sorted_by_own;
  auto it = std::lower_bound(
      sorted.begin(), sorted.end(), state.dynamic_threshold,
      [](const auto& entry, double value) { return entry.first < value; });
  if (it == sorted.end()) return sorted.back().second;  // nothing clears the bar
  const auto count = static_cast<std::uint64_t>(sorted.end() - it);
  return (it + static_cast<std::ptrdiff_t>(draw_below(rng, count)))->second;
}

}  // namespace nst
