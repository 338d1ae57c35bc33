#pragma once

#include <vector>

#include "nst/domain.hpp"

namespace nst {

/// Frequency model of the opponent's preferences built from observed bids.
/// Issue weights derive from normalized value dispersion: an issue where the
/// opponent keeps asking for the same value is treated as important to them.
class OpponentModel {
 public:
  explicit OpponentModel(const NegotiationDomain& domain);

  void observe(const Bid& bid);

  /// Estimated opponent utility in [0,1]; 0 before any observation.
  double estimate(const Bid& bid) const;

  std::uint64_t observations() const { return observations_; }
  const std::vector<std::vector<std::uint64_t>>& counts() const { return counts_; }
  std::vector<double> issue_weights() const;

 private:
  const NegotiationDomain* domain_;
  std::vector<std::vector<std::uint64_t>> counts_;
  std::uint64_t observations_ = 0;
};

}  // namespace nst
