#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "helpers.hpp"
#include "nst/enrichment.hpp"
#include "nst/errors.hpp"
#include "nst/json_io.hpp"
#include "nst/numerals.hpp"
#include "nst/printer.hpp"
#include "nst/validation.hpp"

using namespace nst;

namespace {

const RuleSet& default_rules() {
  static const RuleSet rules = load_rules(nst_test::data_path("rules/default_rules.txt"));
  return rules;
}

OfflineBackend offline_backend() {
  return OfflineBackend(load_substitutions(nst_test::data_path("rules/offline_enrichment.txt")));
}

std::string party_source() {
  return nst_test::read_file(nst_test::data_path("templates/party.nst"));
}

std::string grocery_source() {
  return nst_test::read_file(nst_test::data_path("templates/grocery.nst"));
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

bool erase_first(std::string& text, const std::string& needle) {
  const std::size_t pos = text.find(needle);
  if (pos == std::string::npos) return false;
  text.erase(pos, needle.size());
  return true;
}

}  // namespace

TEST_CASE("numeral extraction follows the fixed grammar") {
  const auto numerals = extract_numerals(
      "From 0.00% to 3.61% the bar is Q(-0.2*t + 0.22); never 1e-3 less.");
  REQUIRE(numerals.size() == 5);
  CHECK(numerals[0].value == 0.0);
  CHECK(numerals[0].percent);
  CHECK(numerals[1].value == 3.61);
  CHECK(numerals[1].percent);
  CHECK(numerals[2].value == -0.2);
  CHECK(numerals[2].lexeme == "-0.2");
  CHECK(numerals[3].value == 0.22);
  CHECK(numerals[4].value == 0.001);

  // digits inside names are not numeric content
  CHECK(extract_numerals("the \"generated-89081\" strategy").empty());
  CHECK(extract_numerals("plan v2 and \"42fast\"").empty());
  // arithmetic-looking runs still count
  CHECK(extract_numerals("5-3").size() == 2);

  const Numeral percent = extract_numerals("3.61%").front();
  CHECK(numeral_matches(percent, 0.0361, 0.005));
  CHECK(numeral_matches(percent, 3.61, 0.005));
  CHECK_FALSE(numeral_matches(percent, 0.5, 0.005));
}

TEST_CASE("rule-based Party explanation validates clean") {
  const StrategyTemplate tmpl = parse_template(party_source());
  const Explanation expl = realize(annotate(tmpl), default_rules());
  const ValidationReport report = validate(expl, tmpl);
  CHECK(report.valid);
  for (const SegmentReport& sr : report.segments) CHECK(sr.pass());
}

TEST_CASE("deleting a constant flips the report and names the number") {
  const StrategyTemplate tmpl = parse_template(party_source());
  Explanation expl = realize(annotate(tmpl), default_rules());
  REQUIRE(erase_first(expl.segments[1].text, "0.22"));
  const ValidationReport report = validate(expl, tmpl);
  CHECK_FALSE(report.valid);
  REQUIRE(report.segments.size() >= 2);
  const SegmentReport& sr = report.segments[1];
  CHECK_FALSE(sr.numeric_round_trip.pass);
  bool named = false;
  for (const std::string& d : sr.numeric_round_trip.details) named = named || d == "0.22";
  CHECK(named);
}

TEST_CASE("an early-phase paraphrase passes only with its percentage") {
  const StrategyTemplate tmpl = parse_template(party_source());
  Explanation expl = realize(annotate(tmpl), default_rules());
  expl.segments[1].text =
      "In the early phase we compare the offer's value against the greater of our formula "
      "over offers received (-0.2 and 0.22) and the adjusting threshold, i.e. from 0.00% "
      "to 3.61% of the session.";
  CHECK(validate(expl, tmpl).valid);

  std::string& text = expl.segments[1].text;
  REQUIRE(erase_first(text, " 3.61%"));
  const ValidationReport report = validate(expl, tmpl);
  CHECK_FALSE(report.valid);
  CHECK_FALSE(report.segments[1].numeric_round_trip.pass);
}

TEST_CASE("foreign numerals are flagged and refinement repairs them") {
  const StrategyTemplate tmpl = parse_template(party_source());
  Explanation expl = realize(annotate(tmpl), default_rules());
  expl.segments[1].text += " Fun fact: the answer is 42.";
  const ValidationReport report = validate(expl, tmpl);
  CHECK_FALSE(report.valid);
  bool cited = false;
  for (const std::string& d : report.segments[1].no_foreign_numbers.details) {
    cited = cited || d == "42";
  }
  CHECK(cited);

  const Explanation repaired = refine_explanation(expl, report, default_rules());
  const ValidationReport after = validate(repaired, tmpl);
  CHECK(after.valid);
  CHECK(repaired.segments[1].provenance == Provenance::RuleBased);
  // untouched segments keep their text
  CHECK(repaired.segments[2].text == expl.segments[2].text);
}

TEST_CASE("refine is a no-op on an all-valid report") {
  const StrategyTemplate tmpl = parse_template(party_source());
  const Explanation expl = realize(annotate(tmpl), default_rules());
  const ValidationReport report = validate(expl, tmpl);
  const Explanation out = refine_explanation(expl, report, default_rules());
  REQUIRE(out.segments.size() == expl.segments.size());
  for (std::size_t i = 0; i < out.segments.size(); ++i) {
    CHECK(out.segments[i].text == expl.segments[i].text);
  }
}

TEST_CASE("refinement reaches a valid fixed point from any fault") {
  const StrategyTemplate tmpl = parse_template(grocery_source());
  Explanation expl =
      customize(realize(annotate(tmpl), default_rules()), Audience::Layperson, default_rules());
  expl.segments[1].text = "numbers noise 7.77 and nothing else";
  expl.segments[3].text = "";
  const ValidationReport report = validate(expl, tmpl);
  CHECK_FALSE(report.valid);
  const Explanation fixed = refine_explanation(expl, report, default_rules());
  CHECK(validate(fixed, tmpl).valid);
}

TEST_CASE("explain_strategy: Party layperson offline reproduces the walkthrough") {
  const OfflineBackend backend = offline_backend();
  std::string stages;
  PipelineOptions options;
  options.observer = [&stages](char c) { stages += c; };
  const ValidatedExplanation result = explain_strategy(
      party_source(), Audience::Layperson, backend, default_rules(), options);
  CHECK(result.report.valid);
  CHECK(result.refinement_rounds == 0);
  CHECK(stages == "PSRTCV");
  REQUIRE(result.explanation.segments.size() == 3);
  CHECK(contains(result.explanation.segments[1].text, "3.61"));
  CHECK(contains(result.explanation.segments[2].text, "larger"));
  CHECK(contains(result.explanation.segments[2].text,
                 "Choose the larger number between 'u' and the number we get from our special "
                 "formula"));
}

TEST_CASE("explain_strategy: Grocery expert passthrough keeps the constants") {
  const PassthroughBackend backend;
  const ValidatedExplanation result =
      explain_strategy(grocery_source(), Audience::Expert, backend, default_rules());
  CHECK(result.report.valid);
  std::string all_text;
  for (const Segment& seg : result.explanation.segments) all_text += seg.text + " ";
  for (const char* needle : {"-0.55", "0.05", "1.4"}) {
    CHECK_MESSAGE(contains(all_text, needle), "missing constant ", needle);
  }
}

TEST_CASE("explain_strategy propagates parse errors") {
  const PassthroughBackend backend;
  CHECK_THROWS_AS(explain_strategy("acceptance template broken {", Audience::Expert, backend,
                                   default_rules()),
                  SyntaxError);
}

TEST_CASE("explain_strategy with the offline backend is deterministic") {
  const OfflineBackend backend = offline_backend();
  const ValidatedExplanation a =
      explain_strategy(party_source(), Audience::Layperson, backend, default_rules());
  const ValidatedExplanation b =
      explain_strategy(party_source(), Audience::Layperson, backend, default_rules());
  CHECK(explanation_to_json(a.explanation).dump() == explanation_to_json(b.explanation).dump());
  CHECK(report_to_json(a.report).dump() == report_to_json(b.report).dump());
}

TEST_CASE("explanations survive a JSON round trip for external validation") {
  const OfflineBackend backend = offline_backend();
  const ValidatedExplanation result =
      explain_strategy(party_source(), Audience::Layperson, backend, default_rules());
  const Json j = explanation_to_json(result.explanation);
  const Explanation back = explanation_from_json(j);
  const StrategyTemplate tmpl = parse_template(party_source());
  CHECK(validate(back, tmpl).valid);
  CHECK(explanation_to_json(back).dump() == j.dump());
}

TEST_CASE("generated templates validate through the whole pipeline") {
  const OfflineBackend backend = offline_backend();
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 50; ++trial) {
    const StrategyTemplate tmpl = nst_test::random_template(rng);
    const std::string source = pretty_print(tmpl);
    const Audience audience = trial % 2 == 0 ? Audience::Expert : Audience::Layperson;
    const ValidatedExplanation result =
        explain_strategy(source, audience, backend, default_rules());
    CHECK_MESSAGE(result.report.valid, "invalid explanation for:\n", source);
  }
}

TEST_CASE("near-zero slopes stay explainable for laypeople") {
  StrategyTemplate tmpl;
  tmpl.kind = TemplateKind::Acceptance;
  tmpl.name = "tiny";
  tmpl.phases.push_back(
      make_acceptance_phase(0.0, 1.0, {QuantileConcession{1e-12, 0.4}, DynamicThreshold{}}));
  const OfflineBackend backend = offline_backend();
  const ValidatedExplanation result =
      explain_strategy(pretty_print(tmpl), Audience::Layperson, backend, default_rules());
  CHECK(result.report.valid);
  CHECK(result.explanation.segments[1].text.find("0.40") != std::string::npos);
}

TEST_CASE("concurrent pipelines agree with each other") {
  const OfflineBackend backend = offline_backend();
  const std::string expected = explanation_to_json(
      explain_strategy(party_source(), Audience::Layperson, backend, default_rules())
          .explanation).dump();
  std::vector<std::thread> workers;
  std::atomic<bool> ok{true};
  for (int i = 0; i < 4; ++i) {
    workers.emplace_back([&] {
      const auto result =
          explain_strategy(party_source(), Audience::Layperson, backend, default_rules());
      if (explanation_to_json(result.explanation).dump() != expected) ok = false;
    });
  }
  for (std::thread& w : workers) w.join();
  CHECK(ok.load());
}
