#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nst {

/// One negotiable issue with its ordered discrete values.
struct Issue {
  std::string name;
  std::vector<std::string> values;
};

struct NegotiationDomain {
  std::vector<Issue> issues;

  std::uint64_t outcome_count() const;
};

/// One chosen value index per issue.
struct Bid {
  std::vector<int> values;

  bool operator==(const Bid& other) const { return values == other.values; }
  bool operator<(const Bid& other) const { return values < other.values; }
};

/// Linear-additive preference profile: per-issue weights summing to 1 and
/// per-value evaluations in [0,1] with each issue's best value at 1.
struct UtilityModel {
  std::vector<double> weights;
  std::vector<std::vector<double>> evaluations;
};

/// Throws ScenarioError (with field_prefix in the path) on invariant
/// violations: weight sum, evaluation ranges, per-issue maxima.
void check_utility_model(const UtilityModel& model, const NegotiationDomain& domain,
                         const std::string& field_prefix);

void check_bid(const Bid& bid, const NegotiationDomain& domain);

/// Linear-additive utility; throws DomainMismatchError for malformed bids.
double utility(const UtilityModel& model, const Bid& bid,
               const NegotiationDomain& domain);

/// All bids of the domain in odometer order (last issue fastest). Throws
/// DomainTooLargeError above the enumeration cap.
std::vector<Bid> enumerate_bids(const NegotiationDomain& domain,
                                std::uint64_t cap = 1000000);

/// Mutable per-turn view of one negotiator, as seen by the tactic functions.
struct AgentState {
  double t = 0.0;
  std::optional<Bid> planned_bid;       // own next planned bid, if computed
  std::vector<Bid> opponent_history;    // offers received, oldest first
  double dynamic_threshold = 1.0;       // current u_dyn value
};

}  // namespace nst
