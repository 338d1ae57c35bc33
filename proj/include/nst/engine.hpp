#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nst/domain.hpp"
#include "nst/opponent_model.hpp"
#include "nst/strategy.hpp"

namespace nst {

using Rng = std::mt19937_64;

/// Unbiased draw in [0, n) with rejection sampling; stable across platforms.
std::uint64_t draw_below(Rng& rng, std::uint64_t n);

/// The p-th best utility received: descending sort, nearest-rank statistic
/// rank = max(1, ceil(p*n)). p is clamped to [0,1]; p near 0 yields the best
/// received utility, p = 1 the worst. Throws EmptyHistoryError.
double empirical_quantile(std::vector<double> utilities, double p);

/// Boulware concession target u_min + (u_max - u_min) * (1 - t^(1/e)).
double boulware_target(double t, double e, double u_min, double u_max);

struct BoulwareParams {
  double e = 0.2;
  double u_min = 0.4;
  double u_max = 1.0;
};

/// Evaluates the acceptance condition at the state's phase: each selected
/// tactic yields a threshold and the offer is accepted iff its utility
/// reaches the maximum of them (the conjunctive reading). Quantile tactics
/// with an empty opponent history demand utility 1.
bool evaluate_acceptance(const StrategyTemplate& tmpl, const AgentState& state,
                         const Bid& offer, const UtilityModel& own,
                         const NegotiationDomain& domain);

/// The thresholds behind evaluate_acceptance, one per tactic in phase order.
std::vector<double> acceptance_thresholds(const StrategyTemplate& tmpl, const AgentState& state,
                                          const UtilityModel& own,
                                          const NegotiationDomain& domain);

/// Opponent utility source for bid selection: ground truth when the scenario
/// supplies one, else the frequency model estimate.
using OpponentUtilityFn = std::function<double(const Bid&)>;

/// Exact Pareto front: a bid is kept iff no other bid weakly improves both
/// utilities and strictly improves one. Deterministic order (bid-lexical).
std::vector<Bid> pareto_front(const NegotiationDomain& domain, const UtilityModel& own,
                              const OpponentUtilityFn& opp);

/// Standard two-criteria TOPSIS over (own, opponent) utility with weight w
/// on own utility: vector-normalized columns, weighted distances to the
/// ideal and anti-ideal, highest closeness wins. Near-ties on closeness
/// (within 1e-9) go to the bid closer to the ideal, then to higher own
/// utility, then to bid-lexical order.
Bid topsis_select(const std::vector<Bid>& front, double w, const UtilityModel& own,
                  const OpponentUtilityFn& opp, const NegotiationDomain& domain);

/// Copy of the opponent's last bid with the value of the least-weighted own
/// issue resampled uniformly among its other values.
Bid opponent_greedy(const Bid& last, const UtilityModel& own, const NegotiationDomain& domain,
                    Rng& rng);

/// Everything bid selection needs besides the template and state.
struct BidContext {
  const NegotiationDomain& domain;
  const UtilityModel& own;
  OpponentUtilityFn opponent;
  BoulwareParams boulware_defaults;
  // Bids sorted by ascending own utility; computed once per session.
  const std::vector<std::pair<double, Bid>>& sorted_by_own;
};

std::vector<std::pair<double, Bid>> sort_bids_by_utility(const NegotiationDomain& domain,
                                                         const UtilityModel& model);

/// Runs the first selected tactic of the phase at state.t. OpponentGreedy
/// falls back to Boulware while the history is empty; RandomAboveThreshold
/// falls back to the best own bid when nothing clears the threshold.
Bid select_bid(const StrategyTemplate& tmpl, const AgentState& state, const BidContext& ctx,
               Rng& rng);

}  // namespace nst
