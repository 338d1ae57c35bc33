#include "nst/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nst/errors.hpp"
#include "nst/parser.hpp"

namespace nst {

namespace {

nlohmann::json read_json(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(field, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(field, std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(field, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

UtilityModel parse_utility(const nlohmann::json& j, const std::string& field,
                           const NegotiationDomain& domain) {
  UtilityModel model;
  try {
    model.weights = j.at("weights").get<std::vector<double>>();
    model.evaluations = j.at("evaluations").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(field, e.what());
  }
  check_utility_model(model, domain, field);
  return model;
}

AgentTemplates parse_agent(const nlohmann::json& j, const std::string& field,
                           const std::filesystem::path& base_dir, double fixed_threshold) {
  AgentTemplates agent;
  ParseOptions options;
  options.fixed_threshold_default = fixed_threshold;
  auto load_one = [&](const char* key, TemplateKind expected) {
    std::string rel;
    try {
      rel = j.at(key).get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError(field + "." + key, e.what());
    }
    const std::filesystem::path path = base_dir / rel;
    StrategyTemplate tmpl;
    try {
      tmpl = parse_template(read_text(path.string(), field + "." + key), options);
    } catch (const Error& e) {
      throw ScenarioError(field + "." + key, e.what());
    }
    if (tmpl.kind != expected) {
      throw ScenarioError(field + "." + key,
                          expected == TemplateKind::Acceptance
                              ? "expected an acceptance template"
                              : "expected a bidding template");
    }
    return tmpl;
  };
  agent.acceptance = load_one("acceptance", TemplateKind::Acceptance);
  agent.bidding = load_one("bidding", TemplateKind::Bidding);
  return agent;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  const nlohmann::json j = read_json(path, "scenario");
  const std::filesystem::path base_dir = std::filesystem::path(path).parent_path();

  Scenario scenario;
  try {
    scenario.name = j.value("name", std::string("unnamed"));
    for (const auto& issue_json : j.at("domain").at("issues")) {
      Issue issue;
      issue.name = issue_json.at("name").get<std::string>();
      issue.values = issue_json.at("values").get<std::vector<std::string>>();
      scenario.domain.issues.push_back(std::move(issue));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError("domain", e.what());
  }
  if (scenario.domain.issues.empty()) {
    throw ScenarioError("domain.issues", "domain needs at least one issue");
  }
  for (std::size_t i = 0; i < scenario.domain.issues.size(); ++i) {
    if (scenario.domain.issues[i].values.size() < 2) {
      throw ScenarioError("domain.issues[" + std::to_string(i) + "].values",
                          "each issue needs at least two values");
    }
  }

  scenario.utility_a = parse_utility(j.at("utilityA"), "utilityA", scenario.domain);
  scenario.utility_b = parse_utility(j.at("utilityB"), "utilityB", scenario.domain);

  if (j.contains("thresholdSchedule")) {
    try {
      for (const auto& bp : j.at("thresholdSchedule")) {
        scenario.threshold_schedule.breakpoints.emplace_back(bp.at("t").get<double>(),
                                                             bp.at("value").get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError("thresholdSchedule", e.what());
    }
    double prev = -1.0;
    for (const auto& [t, v] : scenario.threshold_schedule.breakpoints) {
      if (t < 0.0 || t > 1.0 || v < 0.0 || v > 1.0) {
        throw ScenarioError("thresholdSchedule", "breakpoints must lie in [0,1] x [0,1]");
      }
      if (t < prev) throw ScenarioError("thresholdSchedule", "breakpoints must be sorted by t");
      prev = t;
    }
  } else {
    scenario.threshold_schedule.breakpoints = {{0.0, 1.0}, {1.0, 1.0}};
  }

  scenario.fixed_threshold = j.value("fixedThreshold", 0.6);
  if (scenario.fixed_threshold < 0.0 || scenario.fixed_threshold > 1.0) {
    throw ScenarioError("fixedThreshold", "must lie in [0, 1]");
  }
  if (j.contains("boulware")) {
    const auto& b = j.at("boulware");
    scenario.boulware.e = b.value("e", 0.2);
    scenario.boulware.u_min = b.value("uMin", 0.4);
    scenario.boulware.u_max = b.value("uMax", 1.0);
    if (!(scenario.boulware.e > 0.0)) throw ScenarioError("boulware.e", "must be > 0");
    if (!(scenario.boulware.u_min >= 0.0 && scenario.boulware.u_min < scenario.boulware.u_max &&
          scenario.boulware.u_max <= 1.0)) {
      throw ScenarioError("boulware", "bounds must satisfy 0 <= uMin < uMax <= 1");
    }
  }
  scenario.deadline = j.value("deadline", 60);
  if (scenario.deadline < 1) throw ScenarioError("deadline", "must be at least 1");
  scenario.seed = j.value("seed", 0ULL);

  if (j.contains("agentA")) {
    scenario.agent_a = parse_agent(j.at("agentA"), "agentA", base_dir, scenario.fixed_threshold);
  }
  if (j.contains("agentB")) {
    scenario.agent_b = parse_agent(j.at("agentB"), "agentB", base_dir, scenario.fixed_threshold);
  }
  return scenario;
}

}  // namespace nst
