#pragma once

#include <memory>
#include <optional>
#include <string>

#include "nst/engine.hpp"
#include "nst/json_io.hpp"

namespace nst {

enum class ActionKind { Offer, Accept, Reject };

struct TranscriptEntry {
  int round = 0;
  double t = 0.0;
  char actor = 'A';
  ActionKind action = ActionKind::Offer;
  std::optional<Bid> bid;  // present for offers
};

/// Piecewise-linear u_dyn schedule over normalized time.
struct ThresholdSchedule {
  std::vector<std::pair<double, double>> breakpoints;  // (t, value), sorted by t

  double at(double t) const;
};

/// State the accepting side saw at agreement time, recorded so the decision
/// can be replayed through evaluate_acceptance without re-running tactics.
struct AgreementState {
  char actor = 'A';
  double t = 0.0;
  std::optional<Bid> planned_bid;
  double dynamic_threshold = 1.0;
  std::size_t history_size = 0;
};

struct SessionOutcome {
  bool agreed = false;
  std::optional<Bid> agreement;
  double agreement_time = 0.0;
  double utility_a = 0.0;
  double utility_b = 0.0;
  std::vector<TranscriptEntry> transcript;
  std::optional<AgreementState> agreement_state;
};

/// A per-session negotiator. Turn order: observe the incoming offer, begin
/// the turn (plan the next bid), then either accept or counter.
class Negotiator {
 public:
  virtual ~Negotiator() = default;
  virtual void observe(const Bid& incoming) = 0;
  virtual void begin_turn(double t, Rng& rng) = 0;
  virtual bool accepts(const Bid& offer) const = 0;
  virtual const Bid& planned() const = 0;
  virtual AgentState state_snapshot() const = 0;
};

struct TemplateAgentConfig {
  StrategyTemplate acceptance;
  StrategyTemplate bidding;
  ThresholdSchedule threshold_schedule;
  BoulwareParams boulware_defaults;
};

/// Drives both templates; opponent utility for Pareto selection comes from
/// the ground-truth profile when provided, else the frequency model.
class TemplateNegotiator : public Negotiator {
 public:
  TemplateNegotiator(TemplateAgentConfig config, const NegotiationDomain& domain,
                     const UtilityModel& own,
                     std::optional<UtilityModel> opponent_truth);

  void observe(const Bid& incoming) override;
  void begin_turn(double t, Rng& rng) override;
  bool accepts(const Bid& offer) const override;
  const Bid& planned() const override;
  AgentState state_snapshot() const override { return state_; }

  const StrategyTemplate& acceptance_template() const { return config_.acceptance; }

 private:
  TemplateAgentConfig config_;
  const NegotiationDomain* domain_;
  const UtilityModel* own_;
  std::optional<UtilityModel> opponent_truth_;
  OpponentModel opponent_model_;
  std::vector<std::pair<double, Bid>> sorted_by_own_;
  AgentState state_;
};

/// Built-in time-dependent opponent: bids along the Boulware curve and
/// accepts anything at or above the current target.
class BoulwareNegotiator : public Negotiator {
 public:
  BoulwareNegotiator(BoulwareParams params, const NegotiationDomain& domain,
                     const UtilityModel& own);

  void observe(const Bid& incoming) override;
  void begin_turn(double t, Rng& rng) override;
  bool accepts(const Bid& offer) const override;
  const Bid& planned() const override;
  AgentState state_snapshot() const override { return state_; }

 private:
  BoulwareParams params_;
  const NegotiationDomain* domain_;
  const UtilityModel* own_;
  std::vector<std::pair<double, Bid>> sorted_by_own_;
  AgentState state_;
  double current_target_ = 1.0;
};

/// Alternating offers: A opens, time advances as round/deadline, the
/// receiver of an offer either accepts or counters; reaching the deadline
/// without agreement fails with zero utilities.
SessionOutcome run_session(const NegotiationDomain& domain, const UtilityModel& utility_a,
                           const UtilityModel& utility_b, Negotiator& agent_a,
                           Negotiator& agent_b, int deadline, std::uint64_t seed);

/// One action per line, stable field order; byte-identical across runs for
/// the same configuration and seed.
std::string transcript_to_jsonl(const SessionOutcome& outcome);

Json outcome_to_json(const SessionOutcome& outcome);

}  // namespace nst
