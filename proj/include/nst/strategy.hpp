#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nst/expr.hpp"

namespace nst {

// ---------------------------------------------------------------------------
// Acceptance tactics
// ---------------------------------------------------------------------------

struct OwnNextBidUtility {};

struct QuantileConcession {
  double slope = 0.0;      // a in Q(a*t + b)
  double intercept = 0.0;  // b
};

struct DynamicThreshold {};

struct FixedThreshold {
  double value = 0.0;
  // True when the template wrote the symbolic u_fixed; the value then comes
  // from configuration and is recorded in output metadata rather than text.
  bool symbolic = false;
};

using AcceptanceTactic =
    std::variant<OwnNextBidUtility, QuantileConcession, DynamicThreshold, FixedThreshold>;

// ---------------------------------------------------------------------------
// Bidding tactics
// ---------------------------------------------------------------------------

struct BoulwareBid {
  // Without explicit parameters the engine's configured defaults apply.
  bool explicit_params = false;
  double e = 0.2;
  double u_min = 0.4;
  double u_max = 1.0;
};

struct ParetoWeightedBid {
  double slope = 0.0;      // weight on own utility = slope*t + intercept
  double intercept = 0.0;
};

struct OpponentGreedyBid {};

struct RandomAboveThresholdBid {};

using BiddingTactic =
    std::variant<BoulwareBid, ParetoWeightedBid, OpponentGreedyBid, RandomAboveThresholdBid>;

/// One priority-ordered bidding choice; unselected entries are skipped by the
/// engine and omitted from the canonical DSL rendering.
struct BidChoice {
  BiddingTactic tactic;
  bool selected = true;
};

// ---------------------------------------------------------------------------
// Phases and templates
// ---------------------------------------------------------------------------

enum class TemplateKind { Acceptance, Bidding };

/// Time slice [t_start, t_end) of the normalized session; the final phase is
/// closed at 1. Holds either an acceptance condition or bidding choices.
struct Phase {
  double t_start = 0.0;
  double t_end = 1.0;

  // Acceptance phases: the full condition tree plus the tactic view derived
  // from its threshold subtrees (kept in sync by the builders/parser).
  ExprPtr condition;
  std::vector<AcceptanceTactic> accept_tactics;

  // Bidding phases.
  std::vector<BidChoice> bids;
};

struct StrategyTemplate {
  TemplateKind kind = TemplateKind::Acceptance;
  std::string name;
  std::vector<Phase> phases;
  // Value substituted for the symbolic u_fixed tactic; template metadata.
  double fixed_threshold_default = 0.6;
};

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

/// Canonical condition tree U(offer) >= max(tactic thresholds...) for a
/// tactic conjunction (no max wrapper for a single tactic).
ExprPtr build_condition(const std::vector<AcceptanceTactic>& tactics);

/// Extracts the tactic view from a condition tree; throws StructureError if
/// a threshold subtree is not one of the four tactic shapes.
std::vector<AcceptanceTactic> extract_tactics(const MathExpr& condition,
                                              double fixed_threshold_default);

Phase make_acceptance_phase(double t_start, double t_end,
                            std::vector<AcceptanceTactic> tactics);
Phase make_bidding_phase(double t_start, double t_end, std::vector<BidChoice> bids);

/// Checks every template invariant (tiling of [0,1], non-empty selected
/// tactics, parameter ranges, condition shape). Throws StructureError.
void check_template(const StrategyTemplate& tmpl);

/// Returns the unique phase whose interval contains t; t = 1 falls in the
/// final phase. Expects 0 <= t <= 1 and a valid template.
const Phase& phase_at(const StrategyTemplate& tmpl, double t);
std::size_t phase_index_at(const StrategyTemplate& tmpl, double t);

bool structural_equal(const StrategyTemplate& a, const StrategyTemplate& b);
bool tactic_equal(const AcceptanceTactic& a, const AcceptanceTactic& b);
bool tactic_equal(const BiddingTactic& a, const BiddingTactic& b);

}  // namespace nst
