#include "nst/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nst/enrichment.hpp"
#include "nst/errors.hpp"
#include "nst/json_io.hpp"
#include "nst/printer.hpp"
#include "nst/scenario.hpp"
#include "nst/validation.hpp"

#ifndef NST_DEFAULT_DATA_DIR
#define NST_DEFAULT_DATA_DIR "data"
#endif

namespace nst {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::unique_ptr<RefinementBackend> make_backend(const std::string& name,
                                                const std::string& table_path) {
  if (name == "offline") {
    return std::make_unique<OfflineBackend>(load_substitutions(table_path));
  }
  if (name == "passthrough") {
    return std::make_unique<PassthroughBackend>();
  }
  return std::make_unique<RemoteBackend>(RemoteBackend::config_from_env());
}

std::string explanation_text(const Explanation& expl) {
  std::string out;
  for (std::size_t i = 0; i < expl.segments.size(); ++i) {
    if (i) out += "\n\n";
    out += expl.segments[i].text;
  }
  out += "\n";
  return out;
}

int cmd_parse(const std::string& file, const std::string& format, std::ostream& out) {
  const StrategyTemplate tmpl = parse_template(read_file(file));
  if (format == "json") {
    out << template_to_json(tmpl).dump(2) << "\n";
  } else {
    out << pretty_print(tmpl);
  }
  return kExitOk;
}

int cmd_explain(const std::string& file, const std::string& audience_name,
                const std::string& backend_name, const std::string& format,
                const std::string& rules_path, const std::string& table_path,
                const std::string& report_path, const std::string& roles_path,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  const RuleSet rules = load_rules(rules_path);
  const auto backend = make_backend(backend_name, table_path);
  const Audience audience =
      audience_name == "expert" ? Audience::Expert : Audience::Layperson;

  const std::string source = read_file(file);
  if (!roles_path.empty()) {
    const StrategyTemplate tmpl = parse_template(source);
    write_file(roles_path, semrep_to_json(annotate(tmpl)).dump(2) + "\n");
  }

  ValidatedExplanation result;
  try {
    result = explain_strategy(source, audience, *backend, rules);
  } catch (const ValidationExhaustedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  for (const std::string& warning : result.enrichment_warnings) {
    err << "warning: " << warning << "\n";
  }
  if (!report_path.empty()) {
    write_file(report_path, report_to_json(result.report).dump(2) + "\n");
  }
  std::string rendered;
  if (format == "json") {
    Json j = explanation_to_json(result.explanation);
    j["report"] = report_to_json(result.report);
    j["refinementRounds"] = result.refinement_rounds;
    rendered = j.dump(2) + "\n";
  } else {
    rendered = explanation_text(result.explanation);
  }
  if (!out_path.empty()) {
    write_file(out_path, rendered);
  } else {
    out << rendered;
  }
  return result.report.valid ? kExitOk : kExitInvalid;
}

int cmd_simulate(const std::string& scenario_path, const std::string& agent_b_spec,
                 int deadline_override, long long seed_override, const std::string& out_path,
                 const std::string& format, std::ostream& out) {
  Scenario scenario = load_scenario(scenario_path);
  if (deadline_override > 0) scenario.deadline = deadline_override;
  if (seed_override >= 0) scenario.seed = static_cast<std::uint64_t>(seed_override);
  if (!scenario.agent_a) {
    throw ScenarioError("agentA", "scenario must configure agent A's templates");
  }

  TemplateAgentConfig config_a{scenario.agent_a->acceptance, scenario.agent_a->bidding,
                               scenario.threshold_schedule, scenario.boulware};
  TemplateNegotiator agent_a(config_a, scenario.domain, scenario.utility_a,
                             scenario.utility_b);

  std::unique_ptr<Negotiator> agent_b;
  if (agent_b_spec.rfind("template:", 0) == 0) {
    const std::string path = agent_b_spec.substr(9);
    const auto templates = parse_templates(read_file(path));
    AgentTemplates parsed;
    bool have_accept = false, have_bid = false;
    for (const StrategyTemplate& tmpl : templates) {
      if (tmpl.kind == TemplateKind::Acceptance) {
        parsed.acceptance = tmpl;
        have_accept = true;
      } else {
        parsed.bidding = tmpl;
        have_bid = true;
      }
    }
    if (!have_accept || !have_bid) {
      throw Error("agent-b template file needs one acceptance and one bidding template");
    }
    TemplateAgentConfig config_b{parsed.acceptance, parsed.bidding,
                                 scenario.threshold_schedule, scenario.boulware};
    agent_b = std::make_unique<TemplateNegotiator>(config_b, scenario.domain,
                                                   scenario.utility_b, scenario.utility_a);
  } else if (agent_b_spec == "boulware" || agent_b_spec.empty()) {
    if (scenario.agent_b && agent_b_spec.empty()) {
      TemplateAgentConfig config_b{scenario.agent_b->acceptance, scenario.agent_b->bidding,
                                   scenario.threshold_schedule, scenario.boulware};
      agent_b = std::make_unique<TemplateNegotiator>(config_b, scenario.domain,
                                                     scenario.utility_b, scenario.utility_a);
    } else {
      agent_b = std::make_unique<BoulwareNegotiator>(scenario.boulware, scenario.domain,
                                                     scenario.utility_b);
    }
  } else {
    throw Error("unknown --agent-b value: " + agent_b_spec +
                " (expected 'boulware' or 'template:<file>')");
  }

  const SessionOutcome outcome = run_session(scenario.domain, scenario.utility_a,
                                             scenario.utility_b, agent_a, *agent_b,
                                             scenario.deadline, scenario.seed);
  const std::string transcript = transcript_to_jsonl(outcome);
  if (!out_path.empty()) {
    write_file(out_path, transcript);
  } else {
    out << transcript;
  }
  if (format == "json") {
    out << outcome_to_json(outcome).dump(2) << "\n";
  } else if (outcome.agreed) {
    out << "agreement at t=" << render_number(outcome.agreement_time)
        << " utilityA=" << render_number(outcome.utility_a)
        << " utilityB=" << render_number(outcome.utility_b) << "\n";
  } else {
    out << "no agreement before the deadline\n";
  }
  return kExitOk;
}

int cmd_validate(const std::string& explanation_path, const std::string& template_path,
                 const std::string& format, std::ostream& out) {
  Json j;
  try {
    j = Json::parse(read_file(explanation_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid explanation JSON: ") + e.what());
  }
  Explanation expl;
  try {
    expl = explanation_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("explanation JSON shape: ") + e.what());
  }
  const StrategyTemplate tmpl = parse_template(read_file(template_path));
  const ValidationReport report = validate(expl, tmpl);
  if (format == "json") {
    out << report_to_json(report).dump(2) << "\n";
  } else {
    out << (report.valid ? "valid" : "invalid") << "\n";
    for (const SegmentReport& sr : report.segments) {
      if (sr.pass()) continue;
      out << "segment " << sr.index << ":";
      for (const std::string& d : sr.entity_coverage.details) out << " missing-entity=" << d;
      for (const std::string& d : sr.numeric_round_trip.details) out << " missing-number=" << d;
      for (const std::string& d : sr.no_foreign_numbers.details) out << " foreign-number=" << d;
      out << "\n";
    }
  }
  return report.valid ? kExitOk : kExitInvalid;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"negotiation strategy template toolkit"};
  app.require_subcommand(1);

  const std::string data_dir = NST_DEFAULT_DATA_DIR;

  std::string parse_file, parse_format = "text";
  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a template and print it");
  parse_cmd->add_option("file", parse_file, "template (.nst) file")->required();
  parse_cmd->add_option("--format", parse_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string explain_file, explain_audience, explain_backend = "offline";
  std::string explain_format = "text", explain_report, explain_roles, explain_out;
  std::string rules_path = data_dir + "/rules/default_rules.txt";
  std::string table_path = data_dir + "/rules/offline_enrichment.txt";
  CLI::App* explain_cmd = app.add_subcommand("explain", "explain a template in plain English");
  explain_cmd->add_option("file", explain_file, "template (.nst) file")->required();
  explain_cmd->add_option("--audience", explain_audience, "expert|layperson")
      ->required()
      ->check(CLI::IsMember({"expert", "layperson"}));
  explain_cmd->add_option("--backend", explain_backend, "offline|passthrough|remote")
      ->check(CLI::IsMember({"offline", "passthrough", "remote"}));
  explain_cmd->add_option("--format", explain_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  explain_cmd->add_option("--report", explain_report, "write the validation report JSON here");
  explain_cmd->add_option("--roles", explain_roles, "write the semantic roles JSON here");
  explain_cmd->add_option("--out", explain_out, "write the explanation here instead of stdout");
  explain_cmd->add_option("--rules", rules_path, "realization rule file");
  explain_cmd->add_option("--offline-table", table_path, "offline enrichment table");

  std::string sim_scenario, sim_agent_b, sim_out, sim_format = "text";
  int sim_deadline = 0;
  long long sim_seed = -1;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "run an alternating-offers session");
  sim_cmd->add_option("--scenario", sim_scenario, "scenario JSON file")->required();
  sim_cmd->add_option("--agent-b", sim_agent_b, "boulware|template:<file>");
  sim_cmd->add_option("--deadline", sim_deadline, "rounds until failure");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--out", sim_out, "write the transcript (JSON lines) here");
  sim_cmd->add_option("--format", sim_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string val_explanation, val_template, val_format = "text";
  CLI::App* val_cmd = app.add_subcommand("validate", "validate an explanation JSON");
  val_cmd->add_option("explanation", val_explanation, "explanation JSON file")->required();
  val_cmd->add_option("--against", val_template, "template (.nst) file")->required();
  val_cmd->add_option("--format", val_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> argv_storage = args;
  std::vector<char*> argv;
  argv.push_back(const_cast<char*>("nst"));
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << app.help();
    return kExitInputError;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(parse_file, parse_format, out);
    if (explain_cmd->parsed()) {
      return cmd_explain(explain_file, explain_audience, explain_backend, explain_format,
                         rules_path, table_path, explain_report, explain_roles, explain_out,
                         out, err);
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim_scenario, sim_agent_b, sim_deadline, sim_seed, sim_out,
                          sim_format, out);
    }
    if (val_cmd->parsed()) {
      return cmd_validate(val_explanation, val_template, val_format, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << app.help();
  return kExitInputError;
}

}  // namespace nst
