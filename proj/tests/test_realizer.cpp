#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "nst/errors.hpp"
#include "nst/parser.hpp"
#include "nst/realizer.hpp"

using namespace nst;

namespace {

const RuleSet& default_rules() {
  static const RuleSet rules = load_rules(nst_test::data_path("rules/default_rules.txt"));
  return rules;
}

StrategyTemplate party() {
  return parse_template(nst_test::read_file(nst_test::data_path("templates/party.nst")));
}

Explanation realize_party() { return realize(annotate(party()), default_rules()); }

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("shipped rule file covers all role kinds") {
  CHECK_NOTHROW(default_rules());
  CHECK(default_rules().rules().size() >= 10);
}

TEST_CASE("missing role rules are rejected at load") {
  // keep every rule except the ThresholdCombinator ones
  std::string text;
  for (const Rule& rule : default_rules().rules()) {
    if (rule.kind == RoleKind::ThresholdCombinator) continue;
    text += role_kind_name(rule.kind);
    for (const AttrPredicate& p : rule.predicates) {
      text += "+" + p.attr + (p.value ? "=" + *p.value : "");
    }
    text += " | " + rule.expert_template + " | " + rule.layperson_template + "\n";
  }
  CHECK_THROWS_AS(load_rules_from_string(text), MissingRoleError);
}

TEST_CASE("duplicate patterns and unresolvable slots are load errors") {
  const std::string dup =
      "TimePhase | a {percentEnd} b | c\nTimePhase | d | e\n";
  CHECK_THROWS_AS(load_rules_from_string(dup), RuleFileError);

  const std::string bad_slot = "TimePhase | a {nonsense} b | c\n";
  CHECK_THROWS_AS(load_rules_from_string(bad_slot), RuleFileError);

  // {percentEnd} under TimePhase is resolvable
  CHECK_NOTHROW(load_rules_from_string(
      "TimePhase | spans {percentEnd}% | spans {percentEnd}%\n"
      "OfferUtility | o | o\nOwnPlannedBidUtility | o | o\nConcessionQuantile | o | o\n"
      "DynamicThreshold | o | o\nFixedThreshold | o | o\nThresholdCombinator | o | o\n"
      "LinearTimeTerm | o | o\nAcceptPredicate | o | o\nBidDirective | o | o\n"));
}

TEST_CASE("realize: one header plus one segment per phase") {
  const Explanation expl = realize_party();
  REQUIRE(expl.segments.size() == 3);  // header + 2 phases
  CHECK(expl.segments[0].trace.empty());
  CHECK(contains(expl.segments[0].text, "Party"));
}

TEST_CASE("realize: Party phase 1 opens with the comparison sentence") {
  const Explanation expl = realize_party();
  const std::string& text = expl.segments[1].text;
  CHECK(text.rfind("Within the time interval of t, we are comparing the offer's utility to "
                   "another derived value",
                   0) == 0);
  CHECK(contains(text, "the greater value between"));
  // constants of the phase are rendered
  CHECK(contains(text, "-0.2"));
  CHECK(contains(text, "0.22"));
  CHECK(contains(text, "3.61"));
  for (const Segment& seg : expl.segments) {
    CHECK(seg.provenance == Provenance::RuleBased);
  }
}

TEST_CASE("realize: single fixed-threshold template renders its constant") {
  StrategyTemplate tmpl;
  tmpl.kind = TemplateKind::Acceptance;
  tmpl.name = "Solo";
  tmpl.phases.push_back(make_acceptance_phase(0.0, 1.0, {FixedThreshold{0.5, false}}));
  const Explanation expl = realize(annotate(tmpl), default_rules());
  REQUIRE(expl.segments.size() == 2);
  CHECK(contains(expl.segments[1].text, "0.5"));
}

TEST_CASE("realize: traces cover tactic and interval nodes") {
  const StrategyTemplate tmpl = party();
  const Explanation expl = realize(annotate(tmpl), default_rules());
  std::vector<std::string> covered;
  for (const Segment& seg : expl.segments) {
    covered.insert(covered.end(), seg.trace.begin(), seg.trace.end());
  }
  for (const std::string& path : enumerate_nodes(tmpl)) {
    CHECK_MESSAGE(std::find(covered.begin(), covered.end(), path) != covered.end(),
                  "node not covered: ", path);
  }
}

TEST_CASE("interpretive slope note is emitted and marked") {
  const Explanation expl = realize_party();
  const Segment& seg = expl.segments[1];
  CHECK(contains(seg.text, "the bar becomes stricter over time"));
  CHECK_FALSE(seg.interpretive.empty());

  // flat slopes stay silent
  StrategyTemplate flat;
  flat.kind = TemplateKind::Acceptance;
  flat.name = "flat";
  flat.phases.push_back(make_acceptance_phase(0.0, 1.0, {QuantileConcession{0.0, 0.4}}));
  const Explanation fe = realize(annotate(flat), default_rules());
  CHECK_FALSE(contains(fe.segments[1].text, "bar becomes"));
  CHECK(fe.segments[1].interpretive.empty());
}

TEST_CASE("customize: expert keeps formulas, layperson simplifies") {
  const Explanation base = realize_party();
  const Explanation expert = customize(base, Audience::Expert, default_rules());
  CHECK(contains(expert.segments[1].text,
                 "the utility function U_u(ω_t^o) should exceed or equal the computed utility"));

  const Explanation lay = customize(base, Audience::Layperson, default_rules());
  CHECK(contains(lay.segments[1].text,
                 "we check if our offer's value is at least as good as another number we "
                 "determine"));
  CHECK(contains(lay.segments[1].text, "In the beginning phase"));
  CHECK(contains(lay.segments[2].text,
                 "Choose the larger number between 'u' and the number we get from our special "
                 "formula"));
  // traces unchanged
  REQUIRE(lay.segments.size() == base.segments.size());
  for (std::size_t i = 0; i < lay.segments.size(); ++i) {
    CHECK(lay.segments[i].trace == base.segments[i].trace);
  }
}

TEST_CASE("customize is idempotent per audience") {
  const Explanation base = realize_party();
  const Explanation lay1 = customize(base, Audience::Layperson, default_rules());
  const Explanation lay2 = customize(lay1, Audience::Layperson, default_rules());
  REQUIRE(lay1.segments.size() == lay2.segments.size());
  for (std::size_t i = 0; i < lay1.segments.size(); ++i) {
    CHECK(lay1.segments[i].text == lay2.segments[i].text);
  }
  const Explanation exp1 = customize(base, Audience::Expert, default_rules());
  for (std::size_t i = 0; i < exp1.segments.size(); ++i) {
    CHECK(exp1.segments[i].text == base.segments[i].text);
  }
}

TEST_CASE("expert output mentions at least the symbols the layperson sees") {
  const Explanation base = realize_party();
  const Explanation expert = customize(base, Audience::Expert, default_rules());
  const Explanation lay = customize(base, Audience::Layperson, default_rules());
  const std::vector<std::string> symbols = {"U_u(ω_t^o)", "ū_t", "U_u(ω_t)", "Q("};
  for (const std::string& symbol : symbols) {
    for (std::size_t i = 0; i < lay.segments.size(); ++i) {
      if (contains(lay.segments[i].text, symbol)) {
        CHECK(contains(expert.segments[i].text, symbol));
      }
    }
  }
}

TEST_CASE("bidding templates realize priority-ordered options") {
  const StrategyTemplate tmpl = parse_template(
      nst_test::read_file(nst_test::data_path("templates/party_bidding.nst")));
  const Explanation expl = realize(annotate(tmpl), default_rules());
  REQUIRE(expl.segments.size() == 3);
  CHECK(contains(expl.segments[1].text, "First choice:"));
  CHECK(contains(expl.segments[1].text, "Pareto"));
  CHECK(contains(expl.segments[1].text, "0.12"));
  CHECK(contains(expl.segments[1].text, "0.7"));
  CHECK(contains(expl.segments[2].text, "Otherwise:"));
  // explicit boulware parameters are rendered
  CHECK(contains(expl.segments[2].text, "0.45"));
  CHECK(contains(expl.segments[2].text, "0.2"));
}

TEST_CASE("unselected bidding options are not realized") {
  StrategyTemplate tmpl;
  tmpl.kind = TemplateKind::Bidding;
  tmpl.name = "partial";
  tmpl.phases.push_back(make_bidding_phase(
      0.0, 1.0, {BidChoice{BoulwareBid{}, false}, BidChoice{RandomAboveThresholdBid{}, true}}));
  const Explanation expl = realize(annotate(tmpl), default_rules());
  CHECK_FALSE(contains(expl.segments[1].text, "Boulware"));
  CHECK(contains(expl.segments[1].text, "random"));
  CHECK(contains(expl.segments[1].text, "First choice:"));
  // the unselected option is not traced either; everything else is
  const std::vector<std::string>& trace = expl.segments[1].trace;
  CHECK(std::find(trace.begin(), trace.end(), "/phases/0/bids/0") == trace.end());
  CHECK(std::find(trace.begin(), trace.end(), "/phases/0/bids/1") != trace.end());
  CHECK(std::find(trace.begin(), trace.end(), "/phases/0") != trace.end());
}
