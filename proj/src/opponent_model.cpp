#include "nst/opponent_model.hpp"

#include <cmath>

#include "nst/errors.hpp"

namespace nst {

OpponentModel::OpponentModel(const NegotiationDomain& domain) : domain_(&domain) {
  counts_.reserve(domain.issues.size());
  for (const Issue& issue : domain.issues) {
    counts_.emplace_back(issue.values.size(), 0);
  }
}

void OpponentModel::observe(const Bid& bid) {
  check_bid(bid, *domain_);
  for (std::size_t i = 0; i < bid.values.size(); ++i) {
    ++counts_[i][bid.values[i]];
  }
  ++observations_;
}

std::vector<double> OpponentModel::issue_weights() const {
  const std::size_t n = counts_.size();
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  if (observations_ == 0) return weights;
  std::vector<double> raw(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double entropy = 0.0;
    for (std::uint64_t c : counts_[i]) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / static_cast<double>(observations_);
      entropy -= p * std::log(p);
    }
    const double max_entropy = std::log(static_cast<double>(counts_[i].size()));
    const double dispersion = max_entropy > 0.0 ? entropy / max_entropy : 0.0;
    raw[i] = 1.0 - dispersion;
    total += raw[i];
  }
  if (total < 1e-12) return weights;  // fully dispersed: keep uniform
  for (std::size_t i = 0; i < n; ++i) weights[i] = raw[i] / total;
  return weights;
}

double OpponentModel::estimate(const Bid& bid) const {
  check_bid(bid, *domain_);
  if (observations_ == 0) return 0.0;
  const std::vector<double> weights = issue_weights();
  double u = 0.0;
  for (std::size_t i = 0; i < bid.values.size(); ++i) {
    std::uint64_t max_count = 0;
    for (std::uint64_t c : counts_[i]) max_count = std::max(max_count, c);
    if (max_count == 0) continue;
    u += weights[i] * (static_cast<double>(counts_[i][bid.values[i]]) /
                       static_cast<double>(max_count));
  }
  return u;
}

}  // namespace nst
