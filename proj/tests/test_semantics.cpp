#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "nst/json_io.hpp"
#include "nst/parser.hpp"
#include "nst/semantics.hpp"

using namespace nst;

namespace {

StrategyTemplate party() {
  return parse_template(nst_test::read_file(nst_test::data_path("templates/party.nst")));
}

double num_attr(const SemanticRole& role, const char* name) {
  return std::get<double>(role.attrs.at(name));
}

std::string str_attr(const SemanticRole& role, const char* name) {
  return std::get<std::string>(role.attrs.at(name));
}

}  // namespace

TEST_CASE("interval_phrase rounds half-up to two decimals and flags ends") {
  Phase initial = make_acceptance_phase(0.0, 0.0361, {DynamicThreshold{}});
  AttrMap attrs = interval_phrase(initial);
  CHECK(std::get<double>(attrs.at("percentStart")) == 0.0);
  CHECK(std::get<double>(attrs.at("percentEnd")) == 3.61);
  CHECK(attrs.count("isInitial") == 1);
  CHECK(attrs.count("isFinal") == 0);

  Phase final_phase = make_acceptance_phase(0.3379, 1.0, {DynamicThreshold{}});
  attrs = interval_phrase(final_phase);
  CHECK(std::get<double>(attrs.at("percentStart")) == 33.79);
  CHECK(std::get<double>(attrs.at("percentEnd")) == 100.0);
  CHECK(attrs.count("isFinal") == 1);

  Phase whole = make_acceptance_phase(0.0, 1.0, {DynamicThreshold{}});
  attrs = interval_phrase(whole);
  CHECK(attrs.count("isInitial") == 1);
  CHECK(attrs.count("isFinal") == 1);
  CHECK(std::get<double>(attrs.at("percentEnd")) == 100.0);
}

TEST_CASE("annotate assigns structural roles to the Party template") {
  const SemanticRep rep = annotate(party());
  CHECK(rep.template_name == "Party");

  const SemanticRole& phase1 = rep.roles.at("/phases/0");
  CHECK(phase1.kind == RoleKind::TimePhase);
  CHECK(num_attr(phase1, "percentStart") == 0.0);
  CHECK(num_attr(phase1, "percentEnd") == 3.61);

  const SemanticRole& combinator = rep.roles.at("/phases/0/cond/rhs");
  CHECK(combinator.kind == RoleKind::ThresholdCombinator);
  CHECK(num_attr(combinator, "argCount") == 2.0);

  const SemanticRole& quantile = rep.roles.at("/phases/0/cond/rhs/args/0");
  CHECK(quantile.kind == RoleKind::ConcessionQuantile);
  CHECK(num_attr(quantile, "slope") == -0.20);
  CHECK(num_attr(quantile, "intercept") == 0.22);
  CHECK(str_attr(quantile, "slopeDirection") == "falling");

  CHECK(rep.roles.at("/phases/0/cond/rhs/args/1").kind == RoleKind::DynamicThreshold);
  CHECK(rep.roles.at("/phases/0/cond").kind == RoleKind::AcceptPredicate);
  CHECK(rep.roles.at("/phases/0/cond/lhs").kind == RoleKind::OfferUtility);
  CHECK(rep.roles.at("/phases/1/cond/rhs/args/0").kind == RoleKind::FixedThreshold);
}

TEST_CASE("slope direction thresholds treat tiny slopes as flat") {
  StrategyTemplate tmpl;
  tmpl.kind = TemplateKind::Acceptance;
  tmpl.name = "flat";
  tmpl.phases.push_back(
      make_acceptance_phase(0.0, 1.0, {QuantileConcession{0.0, 0.4}, DynamicThreshold{}}));
  const SemanticRep rep = annotate(tmpl);
  const SemanticRole& q = rep.roles.at("/phases/0/cond/rhs/args/0");
  CHECK(str_attr(q, "slopeDirection") == "flat");

  StrategyTemplate rising;
  rising.kind = TemplateKind::Acceptance;
  rising.name = "rising";
  rising.phases.push_back(
      make_acceptance_phase(0.0, 1.0, {QuantileConcession{0.3, 0.1}, DynamicThreshold{}}));
  CHECK(str_attr(annotate(rising).roles.at("/phases/0/cond/rhs/args/0"), "slopeDirection") ==
        "rising");
}

TEST_CASE("annotation is total over the node enumeration") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const StrategyTemplate tmpl = nst_test::random_template(rng);
    const SemanticRep rep = annotate(tmpl);
    const std::vector<std::string> nodes = enumerate_nodes(tmpl);
    REQUIRE(rep.roles.size() == nodes.size());
    for (const std::string& path : nodes) CHECK(rep.roles.count(path) == 1);
  }
}

TEST_CASE("annotation is deterministic") {
  const StrategyTemplate tmpl = party();
  const SemanticRep a = annotate(tmpl);
  const SemanticRep b = annotate(tmpl);
  REQUIRE(a.roles.size() == b.roles.size());
  CHECK(semrep_to_json(a).dump() == semrep_to_json(b).dump());
}

TEST_CASE("role agreement: tactic kinds map to their roles") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const StrategyTemplate tmpl = nst_test::random_template(rng);
    const SemanticRep rep = annotate(tmpl);
    for (std::size_t i = 0; i < tmpl.phases.size(); ++i) {
      const Phase& phase = tmpl.phases[i];
      const std::string base = "/phases/" + std::to_string(i) + "/cond/rhs";
      if (!phase.condition) continue;
      if (phase.accept_tactics.size() > 1) {
        CHECK(rep.roles.at(base).kind == RoleKind::ThresholdCombinator);
      }
      for (std::size_t j = 0; j < phase.accept_tactics.size(); ++j) {
        const std::string path =
            phase.accept_tactics.size() == 1 ? base : base + "/args/" + std::to_string(j);
        const RoleKind kind = rep.roles.at(path).kind;
        const AcceptanceTactic& tactic = phase.accept_tactics[j];
        if (std::holds_alternative<QuantileConcession>(tactic)) {
          CHECK(kind == RoleKind::ConcessionQuantile);
        } else if (std::holds_alternative<DynamicThreshold>(tactic)) {
          CHECK(kind == RoleKind::DynamicThreshold);
        } else if (std::holds_alternative<FixedThreshold>(tactic)) {
          CHECK(kind == RoleKind::FixedThreshold);
        } else {
          CHECK(kind == RoleKind::OwnPlannedBidUtility);
        }
      }
    }
  }
}

TEST_CASE("semantic representation serializes node paths and attributes") {
  const Json j = semrep_to_json(annotate(party()));
  CHECK(j.at("template") == "Party");
  CHECK(j.at("roles").contains("/phases/0"));
  CHECK(j.at("roles").at("/phases/0").at("role") == "TimePhase");
  CHECK(j.at("roles").at("/phases/0").at("attrs").at("percentEnd").get<double>() == 3.61);
}
