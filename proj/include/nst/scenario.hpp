#pragma once

#include <optional>
#include <string>

#include "nst/session.hpp"

namespace nst {

struct AgentTemplates {
  StrategyTemplate acceptance;
  StrategyTemplate bidding;
};

/// Everything a simulation needs: domain, both preference profiles, the
/// u_dyn schedule, engine parameters and the agents' template files.
struct Scenario {
  std::string name;
  NegotiationDomain domain;
  UtilityModel utility_a;
  UtilityModel utility_b;
  ThresholdSchedule threshold_schedule;
  double fixed_threshold = 0.6;
  BoulwareParams boulware;
  int deadline = 60;
  std::uint64_t seed = 0;
  std::optional<AgentTemplates> agent_a;
  std::optional<AgentTemplates> agent_b;  // absent: built-in Boulware opponent
};

/// Loads and validates a scenario JSON file. Template paths are resolved
/// relative to the scenario file. Throws ScenarioError with the offending
/// field path.
Scenario load_scenario(const std::string& path);

}  // namespace nst
