#include "nst/domain.hpp"

#include <cmath>
#include <numeric>

#include "nst/errors.hpp"

namespace nst {

std::uint64_t NegotiationDomain::outcome_count() const {
  std::uint64_t total = 1;
  for (const Issue& issue : issues) total *= issue.values.size();
  return total;
}

void check_utility_model(const UtilityModel& model, const NegotiationDomain& domain,
                         const std::string& field_prefix) {
  if (domain.issues.empty()) throw ScenarioError("domain.issues", "domain needs at least one issue");
  for (std::size_t i = 0; i < domain.issues.size(); ++i) {
    if (domain.issues[i].values.size() < 2) {
      throw ScenarioError("domain.issues[" + std::to_string(i) + "]",
                          "each issue needs at least two values");
    }
  }
  if (model.weights.size() != domain.issues.size()) {
    throw ScenarioError(field_prefix + ".weights", "one weight per issue required");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] < 0.0) {
      throw ScenarioError(field_prefix + ".weights[" + std::to_string(i) + "]",
                          "weights must be non-negative");
    }
    sum += model.weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ScenarioError(field_prefix + ".weights", "weights must sum to 1 (got " +
                                                       std::to_string(sum) + ")");
  }
  if (model.evaluations.size() != domain.issues.size()) {
    throw ScenarioError(field_prefix + ".evaluations", "one evaluation row per issue required");
  }
  for (std::size_t i = 0; i < model.evaluations.size(); ++i) {
    const auto& row = model.evaluations[i];
    if (row.size() != domain.issues[i].values.size()) {
      throw ScenarioError(field_prefix + ".evaluations[" + std::to_string(i) + "]",
                          "one evaluation per issue value required");
    }
    double best = 0.0;
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ScenarioError(field_prefix + ".evaluations[" + std::to_string(i) + "]",
                            "evaluations must lie in [0, 1]");
      }
      best = std::max(best, v);
    }
    if (std::abs(best - 1.0) > 1e-9) {
      throw ScenarioError(field_prefix + ".evaluations[" + std::to_string(i) + "]",
                          "each issue's best value must evaluate to 1");
    }
  }
}

void check_bid(const Bid& bid, const NegotiationDomain& domain) {
  if (bid.values.size() != domain.issues.size()) {
    throw DomainMismatchError("bid assigns " + std::to_string(bid.values.size()) +
                              " issues, domain has " + std::to_string(domain.issues.size()));
  }
  for (std::size_t i = 0; i < bid.values.size(); ++i) {
    const int v = bid.values[i];
    if (v < 0 || static_cast<std::size_t>(v) >= domain.issues[i].values.size()) {
      throw DomainMismatchError("bid value index out of range for issue " +
                                domain.issues[i].name);
    }
  }
}

double utility(const UtilityModel& model, const Bid& bid, const NegotiationDomain& domain) {
  check_bid(bid, domain);
  double u = 0.0;
  for (std::size_t i = 0; i < bid.values.size(); ++i) {
    u += model.weights[i] * model.evaluations[i][bid.values[i]];
  }
  return u;
}

std::vector<Bid> enumerate_bids(const NegotiationDomain& domain, std::uint64_t cap) {
  const std::uint64_t total = domain.outcome_count();
  if (total > cap) {
    throw DomainTooLargeError("outcome space of " + std::to_string(total) +
                              " exceeds the enumeration cap of " + std::to_string(cap));
  }
  std::vector<Bid> bids;
  bids.reserve(total);
  Bid current;
  current.values.assign(domain.issues.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    bids.push_back(current);
    // odometer increment, last issue fastest
    for (std::size_t i = domain.issues.size(); i-- > 0;) {
      if (++current.values[i] < static_cast<int>(domain.issues[i].values.size())) break;
      current.values[i] = 0;
    }
  }
  return bids;
}

}  // namespace nst
