#pragma once

// Shared fixtures, independent oracles and generators for the test suites.
// The oracles deliberately take different code paths from the library.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nst/domain.hpp"
#include "nst/strategy.hpp"

namespace nst_test {

inline std::string data_dir() { return NST_DATA_DIR; }

inline std::string data_path(const std::string& rel) { return data_dir() + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Nearest-rank "p-th best" via an ascending sort and back-indexing.
inline double quantile_oracle(std::vector<double> xs, double p) {
  p = std::min(1.0, std::max(0.0, p));
  std::sort(xs.begin(), xs.end());  // ascending
  const auto n = xs.size();
  const auto rank_from_best =
      static_cast<std::size_t>(std::max(1.0, std::ceil(p * static_cast<double>(n))));
  return xs[n - rank_from_best];
}

// Plain element-wise utility summation.
inline double utility_oracle(const nst::UtilityModel& model, const nst::Bid& bid) {
  double total = 0.0;
  for (std::size_t i = 0; i < bid.values.size(); ++i) {
    total += model.weights[i] * model.evaluations[i][static_cast<std::size_t>(bid.values[i])];
  }
  return total;
}

// O(n^2) dominance check over explicit utility pairs.
inline std::vector<nst::Bid> dominance_oracle(const std::vector<nst::Bid>& bids,
                                              const std::vector<double>& u_own,
                                              const std::vector<double>& u_opp) {
  std::vector<nst::Bid> front;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < bids.size() && !dominated; ++j) {
      if (u_own[j] >= u_own[i] && u_opp[j] >= u_opp[i] &&
          (u_own[j] > u_own[i] || u_opp[j] > u_opp[i])) {
        dominated = true;
      }
    }
    if (!dominated) front.push_back(bids[i]);
  }
  std::sort(front.begin(), front.end());
  return front;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::vector<double> random_boundaries(std::mt19937_64& rng, int phases) {
  std::vector<double> cuts;
  while (static_cast<int>(cuts.size()) < phases - 1) {
    const double c = uniform(rng, 0.01, 0.99);
    bool fresh = true;
    for (double existing : cuts) fresh = fresh && existing != c;
    if (fresh) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> bounds{0.0};
  bounds.insert(bounds.end(), cuts.begin(), cuts.end());
  bounds.push_back(1.0);
  return bounds;
}

inline nst::AcceptanceTactic random_accept_tactic(std::mt19937_64& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return nst::OwnNextBidUtility{};
    case 1:
      return nst::QuantileConcession{uniform(rng, -1.0, 1.0), uniform(rng, -0.5, 1.5)};
    case 2:
      return nst::DynamicThreshold{};
    default:
      if (rng() % 2 == 0) return nst::FixedThreshold{0.6, true};
      return nst::FixedThreshold{uniform(rng, 0.0, 1.0), false};
  }
}

inline nst::BidChoice random_bid_choice(std::mt19937_64& rng) {
  nst::BidChoice choice;
  switch (uniform_int(rng, 0, 3)) {
    case 0: {
      nst::BoulwareBid b;
      if (rng() % 2 == 0) {
        b.explicit_params = true;
        b.e = uniform(rng, 0.05, 3.0);
        b.u_min = uniform(rng, 0.0, 0.8);
        b.u_max = b.u_min + uniform(rng, 0.01, 1.0 - b.u_min);
        if (b.u_max > 1.0) b.u_max = 1.0;
      }
      choice.tactic = b;
      break;
    }
    case 1:
      choice.tactic = nst::ParetoWeightedBid{uniform(rng, -1.0, 1.0), uniform(rng, 0.0, 1.0)};
      break;
    case 2:
      choice.tactic = nst::OpponentGreedyBid{};
      break;
    default:
      choice.tactic = nst::RandomAboveThresholdBid{};
      break;
  }
  return choice;
}

// Valid template with 1-5 phases and 1-4 tactics per phase, all selected.
inline nst::StrategyTemplate random_template(std::mt19937_64& rng) {
  nst::StrategyTemplate tmpl;
  tmpl.kind = rng() % 2 == 0 ? nst::TemplateKind::Acceptance : nst::TemplateKind::Bidding;
  tmpl.name = "generated-" + std::to_string(rng() % 100000);
  const int phases = uniform_int(rng, 1, 5);
  const std::vector<double> bounds = random_boundaries(rng, phases);
  for (int i = 0; i < phases; ++i) {
    const int tactics = uniform_int(rng, 1, 4);
    if (tmpl.kind == nst::TemplateKind::Acceptance) {
      std::vector<nst::AcceptanceTactic> list;
      for (int j = 0; j < tactics; ++j) list.push_back(random_accept_tactic(rng));
      tmpl.phases.push_back(nst::make_acceptance_phase(bounds[i], bounds[i + 1], list));
    } else {
      std::vector<nst::BidChoice> list;
      for (int j = 0; j < tactics; ++j) list.push_back(random_bid_choice(rng));
      tmpl.phases.push_back(nst::make_bidding_phase(bounds[i], bounds[i + 1], list));
    }
  }
  return tmpl;
}

// Small random domain plus a matched utility model (per-issue maxima at 1).
inline nst::NegotiationDomain random_domain(std::mt19937_64& rng, int max_issues = 3,
                                            int max_values = 4) {
  nst::NegotiationDomain domain;
  const int issues = uniform_int(rng, 1, max_issues);
  for (int i = 0; i < issues; ++i) {
    nst::Issue issue;
    issue.name = "issue" + std::to_string(i);
    const int values = uniform_int(rng, 2, max_values);
    for (int v = 0; v < values; ++v) issue.values.push_back("v" + std::to_string(v));
    domain.issues.push_back(std::move(issue));
  }
  return domain;
}

inline nst::UtilityModel random_utility(std::mt19937_64& rng,
                                        const nst::NegotiationDomain& domain) {
  nst::UtilityModel model;
  double total = 0.0;
  for (std::size_t i = 0; i < domain.issues.size(); ++i) {
    const double w = uniform(rng, 0.1, 1.0);
    model.weights.push_back(w);
    total += w;
  }
  for (double& w : model.weights) w /= total;
  for (const nst::Issue& issue : domain.issues) {
    std::vector<double> row;
    for (std::size_t v = 0; v < issue.values.size(); ++v) row.push_back(uniform(rng, 0.0, 1.0));
    const std::size_t best = rng() % issue.values.size();
    row[best] = 1.0;
    model.evaluations.push_back(std::move(row));
  }
  return model;
}

inline nst::Bid random_bid(std::mt19937_64& rng, const nst::NegotiationDomain& domain) {
  nst::Bid bid;
  for (const nst::Issue& issue : domain.issues) {
    bid.values.push_back(static_cast<int>(rng() % issue.values.size()));
  }
  return bid;
}

}  // namespace nst_test
