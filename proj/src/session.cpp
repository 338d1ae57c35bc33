#include "nst/session.hpp"

#include <algorithm>

#include "nst/errors.hpp"

namespace nst {

double ThresholdSchedule::at(double t) const {
  if (breakpoints.empty()) return 1.0;
  if (t <= breakpoints.front().first) return breakpoints.front().second;
  if (t >= breakpoints.back().first) return breakpoints.back().second;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const auto& [t1, v1] = breakpoints[i];
    const auto& [t0, v0] = breakpoints[i - 1];
    if (t <= t1) {
      const double span = t1 - t0;
      if (span <= 0.0) return v1;
      return v0 + (v1 - v0) * (t - t0) / span;
    }
  }
  return breakpoints.back().second;
}

TemplateNegotiator::TemplateNegotiator(TemplateAgentConfig config,
                                       const NegotiationDomain& domain, const UtilityModel& own,
                                       std::optional<UtilityModel> opponent_truth)
    : config_(std::move(config)),
      domain_(&domain),
      own_(&own),
      opponent_truth_(std::move(opponent_truth)),
      opponent_model_(domain),
      sorted_by_own_(sort_bids_by_utility(domain, own)) {
  if (config_.acceptance.kind != TemplateKind::Acceptance ||
      config_.bidding.kind != TemplateKind::Bidding) {
    throw ConfigError("template agent needs one acceptance and one bidding template");
  }
}

void TemplateNegotiator::observe(const Bid& incoming) {
  check_bid(incoming, *domain_);
  state_.opponent_history.push_back(incoming);
  opponent_model_.observe(incoming);
}

void TemplateNegotiator::begin_turn(double t, Rng& rng) {
  state_.t = t;
  state_.dynamic_threshold = config_.threshold_schedule.at(t);
  OpponentUtilityFn opp;
  if (opponent_truth_) {
    const UtilityModel* truth = &*opponent_truth_;
    const NegotiationDomain* dom = domain_;
    opp = [truth, dom](const Bid& bid) { return utility(*truth, bid, *dom); };
  } else {
    const OpponentModel* model = &opponent_model_;
    opp = [model](const Bid& bid) { return model->estimate(bid); };
  }
  const BidContext ctx{*domain_, *own_, std::move(opp), config_.boulware_defaults,
                       sorted_by_own_};
  state_.planned_bid = select_bid(config_.bidding, state_, ctx, rng);
}

bool TemplateNegotiator::accepts(const Bid& offer) const {
  return evaluate_acceptance(config_.acceptance, state_, offer, *own_, *domain_);
}

const Bid& TemplateNegotiator::planned() const {
  if (!state_.planned_bid) throw EngineError("begin_turn must run before planned()");
  return *state_.planned_bid;
}

BoulwareNegotiator::BoulwareNegotiator(BoulwareParams params, const NegotiationDomain& domain,
                                       const UtilityModel& own)
    : params_(params),
      domain_(&domain),
      own_(&own),
      sorted_by_own_(sort_bids_by_utility(domain, own)) {}

void BoulwareNegotiator::observe(const Bid& incoming) {
  check_bid(incoming, *domain_);
  state_.opponent_history.push_back(incoming);
}

void BoulwareNegotiator::begin_turn(double t, Rng&) {
  state_.t = t;
  current_target_ = boulware_target(t, params_.e, params_.u_min, params_.u_max);
  state_.dynamic_threshold = current_target_;
  auto it = std::lower_bound(
      sorted_by_own_.begin(), sorted_by_own_.end(), current_target_,
      [](const auto& entry, double value) { return entry.first < value; });
  state_.planned_bid = it == sorted_by_own_.end() ? sorted_by_own_.back().second : it->second;
}

bool BoulwareNegotiator::accepts(const Bid& offer) const {
  return utility(*own_, offer, *domain_) >= current_target_;
}

const Bid& BoulwareNegotiator::planned() const {
  if (!state_.planned_bid) throw EngineError("begin_turn must run before planned()");
  return *state_.planned_bid;
}

SessionOutcome run_session(const NegotiationDomain& domain, const UtilityModel& utility_a,
                           const UtilityModel& utility_b, Negotiator& agent_a,
                           Negotiator& agent_b, int deadline, std::uint64_t seed) {
  if (deadline < 1) throw ConfigError("deadline must be at least 1 round");
  Rng rng(seed);
  SessionOutcome outcome;

  // One round is a full exchange: A moves, then B answers, both at
  // t = round/deadline. A bid standing when the deadline passes is a failure.
  std::optional<Bid> incoming;  // the offer awaiting the mover's verdict
  for (int round = 1; round <= deadline; ++round) {
    const double t = static_cast<double>(round) / static_cast<double>(deadline);
    for (const char actor : {'A', 'B'}) {
      Negotiator& mover = actor == 'A' ? agent_a : agent_b;
      if (incoming) mover.observe(*incoming);
      mover.begin_turn(t, rng);

      if (incoming && mover.accepts(*incoming)) {
        outcome.transcript.push_back({round, t, actor, ActionKind::Accept, std::nullopt});
        outcome.agreed = true;
        outcome.agreement = incoming;
        outcome.agreement_time = t;
        outcome.utility_a = utility(utility_a, *incoming, domain);
        outcome.utility_b = utility(utility_b, *incoming, domain);
        const AgentState snap = mover.state_snapshot();
        outcome.agreement_state = AgreementState{actor, t, snap.planned_bid,
                                                 snap.dynamic_threshold,
                                                 snap.opponent_history.size()};
        return outcome;
      }
      if (incoming) {
        outcome.transcript.push_back({round, t, actor, ActionKind::Reject, std::nullopt});
      }
      const Bid counter = mover.planned();
      outcome.transcript.push_back({round, t, actor, ActionKind::Offer, counter});
      incoming = counter;
    }
  }
  // deadline reached without agreement
  outcome.agreed = false;
  outcome.utility_a = 0.0;
  outcome.utility_b = 0.0;
  return outcome;
}

namespace {

std::string action_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::Offer: return "offer";
    case ActionKind::Accept: return "accept";
    case ActionKind::Reject: return "reject";
  }
  return "?";
}

}  // namespace

std::string transcript_to_jsonl(const SessionOutcome& outcome) {
  std::string out;
  for (const TranscriptEntry& entry : outcome.transcript) {
    Json line = Json::object();
    line["round"] = entry.round;
    line["t"] = entry.t;
    line["actor"] = std::string(1, entry.actor);
    line["action"] = action_name(entry.action);
    if (entry.bid) line["bid"] = entry.bid->values;
    out += line.dump();
    out += "\n";
  }
  return out;
}

Json outcome_to_json(const SessionOutcome& outcome) {
  Json out = Json::object();
  out["agreed"] = outcome.agreed;
  if (outcome.agreed) {
    out["agreement"] = outcome.agreement->values;
    out["agreementTime"] = outcome.agreement_time;
  }
  out["utilityA"] = outcome.utility_a;
  out["utilityB"] = outcome.utility_b;
  out["rounds"] = outcome.transcript.empty() ? 0 : outcome.transcript.back().round;
  if (outcome.agreement_state) {
    const AgreementState& s = *outcome.agreement_state;
    Json js = Json::object();
    js["actor"] = std::string(1, s.actor);
    js["t"] = s.t;
    if (s.planned_bid) js["plannedBid"] = s.planned_bid->values;
    js["dynamicThreshold"] = s.dynamic_threshold;
    js["historySize"] = s.history_size;
    out["agreementState"] = std::move(js);
  }
  return out;
}

}  // namespace nst
