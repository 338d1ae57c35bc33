#include "nst/validation.hpp"

#include <algorithm>
#include <cctype>

#include "nst/errors.hpp"
#include "nst/numerals.hpp"
#include "nst/printer.hpp"

namespace nst {

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains_ci(const std::string& haystack_lower, const std::string& needle) {
  return haystack_lower.find(lower(needle)) != std::string::npos;
}

// Lexical labels a traced node must surface in the segment text. Inner
// structural nodes carry no label and are vacuously covered.
std::vector<std::string> label_aliases(const SemanticRole& role) {
  switch (role.kind) {
    case RoleKind::TimePhase:
      return {"phase", "part", "interval", "stretch"};
    case RoleKind::AcceptPredicate:
      return {"compar", "check", "accept", "evaluate"};
    case RoleKind::OfferUtility:
      return {"offer"};
    case RoleKind::OwnPlannedBidUtility:
      return {"next", "plan"};
    case RoleKind::ConcessionQuantile:
      return {"quantile", "formula"};
    case RoleKind::DynamicThreshold:
      return {"dynamic", "adjust"};
    case RoleKind::FixedThreshold:
      return {"fixed", "'u'", "bar"};
    case RoleKind::ThresholdCombinator:
      return {"greater", "larger", "greatest", "largest"};
    case RoleKind::LinearTimeTerm:
      return {};
    case RoleKind::BidDirective: {
      const auto it = role.attrs.find("tactic");
      const std::string tactic = it == role.attrs.end() ? "" : attr_to_string(it->second);
      if (tactic == "boulware") return {"boulware", "give ground"};
      if (tactic == "pareto") return {"pareto", "win-win"};
      if (tactic == "opponent_greedy") return {"opponent", "their last"};
      return {"random"};
    }
  }
  return {};
}

// Constants of a linear term that every audience's rendering carries. Flat
// terms (as classified by the annotator) surface only their intercept.
std::vector<double> linear_required(const SemanticRole& role) {
  const double slope = std::get<double>(role.attrs.at("slope"));
  const double intercept = std::get<double>(role.attrs.at("intercept"));
  const auto dir = role.attrs.find("slopeDirection");
  if (dir != role.attrs.end() && attr_to_string(dir->second) == "flat") return {intercept};
  std::vector<double> out;
  for (double c : decompose(make_linear(slope, intercept)).constants) out.push_back(c);
  return out;
}

// Constants a traced node obliges the segment to render.
std::vector<double> node_constants(const SemanticRole& role) {
  std::vector<double> out;
  auto attr = [&role](const char* name) -> const AttrValue* {
    const auto it = role.attrs.find(name);
    return it == role.attrs.end() ? nullptr : &it->second;
  };
  switch (role.kind) {
    case RoleKind::TimePhase:
      // Interval bounds are checked through their percent renderings.
      if (const auto* v = attr("percentStart")) out.push_back(std::get<double>(*v) / 100.0);
      if (const auto* v = attr("percentEnd")) out.push_back(std::get<double>(*v) / 100.0);
      break;
    case RoleKind::ConcessionQuantile:
      return linear_required(role);
    case RoleKind::FixedThreshold:
      if (!role.attrs.count("symbolic")) out.push_back(std::get<double>(role.attrs.at("value")));
      break;
    case RoleKind::BidDirective: {
      if (role.attrs.count("explicitParams")) {
        out.push_back(std::get<double>(role.attrs.at("e")));
        out.push_back(std::get<double>(role.attrs.at("uMin")));
        out.push_back(std::get<double>(role.attrs.at("uMax")));
      } else if (role.attrs.count("slope")) {
        return linear_required(role);
      }
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace

ValidationReport validate(const Explanation& expl, const StrategyTemplate& tmpl) {
  const SemanticRep semrep = annotate(tmpl);
  const std::vector<double> allowed = template_constants(tmpl);

  ValidationReport report;
  report.valid = true;
  for (std::size_t i = 0; i < expl.segments.size(); ++i) {
    const Segment& seg = expl.segments[i];
    SegmentReport sr;
    sr.index = i;
    const std::string text_lower = lower(seg.text);
    const std::vector<Numeral> numerals = extract_numerals(seg.text);

    std::vector<double> required;
    for (const std::string& path : seg.trace) {
      const auto it = semrep.roles.find(path);
      if (it == semrep.roles.end()) {
        sr.entity_coverage.pass = false;
        sr.entity_coverage.details.push_back("trace node " + path +
                                             " does not exist in the template");
        continue;
      }
      const SemanticRole& role = it->second;
      const std::vector<std::string> aliases = label_aliases(role);
      if (!aliases.empty()) {
        bool found = false;
        for (const std::string& alias : aliases) found = found || contains_ci(text_lower, alias);
        if (!found) {
          sr.entity_coverage.pass = false;
          sr.entity_coverage.details.push_back(role_kind_name(role.kind) + " at " + path +
                                               " (expected e.g. \"" + aliases.front() + "\")");
        }
      }
      for (double c : node_constants(role)) {
        bool seen = false;
        for (double r : required) seen = seen || r == c;
        if (!seen) required.push_back(c);
      }
    }

    for (double c : required) {
      bool found = false;
      for (const Numeral& n : numerals) found = found || numeral_matches(n, c, kNumericTolerance);
      if (!found) {
        sr.numeric_round_trip.pass = false;
        sr.numeric_round_trip.details.push_back(render_number(c));
      }
    }

    for (const Numeral& n : numerals) {
      bool maps = false;
      for (double c : allowed) maps = maps || numeral_matches(n, c, kNumericTolerance);
      if (!maps) {
        sr.no_foreign_numbers.pass = false;
        sr.no_foreign_numbers.details.push_back(n.lexeme + (n.percent ? "%" : ""));
      }
    }

    report.valid = report.valid && sr.pass();
    report.segments.push_back(std::move(sr));
  }
  return report;
}

Explanation refine_explanation(const Explanation& expl, const ValidationReport& report,
                               const RuleSet& rules) {
  Explanation out = expl;
  for (const SegmentReport& sr : report.segments) {
    if (sr.pass() || sr.index >= out.segments.size()) continue;
    Segment& seg = out.segments[sr.index];
    std::string text;
    for (const PlanSentence& sentence : seg.plan) {
      if (!text.empty()) text += " ";
      text += render_sentence(sentence, seg.audience, rules);
    }
    seg.text = std::move(text);
    seg.provenance = Provenance::RuleBased;
    seg.fallback_used = false;
  }
  return out;
}

ValidatedExplanation explain_strategy(const std::string& source, Audience audience,
                                      const RefinementBackend& backend, const RuleSet& rules,
                                      const PipelineOptions& options) {
  auto stage = [&options](char c) {
    if (options.observer) options.observer(c);
  };

  stage('P');
  const StrategyTemplate tmpl = parse_template(source, options.parse);
  stage('S');
  const SemanticRep semrep = annotate(tmpl);
  stage('R');
  Explanation expl = realize(semrep, rules);
  expl.fixed_threshold_default = tmpl.fixed_threshold_default;
  stage('T');
  EnrichResult enriched = enrich(expl, backend);
  stage('C');
  expl = customize(enriched.explanation, audience, rules);
  stage('V');
  ValidationReport report = validate(expl, tmpl);

  int rounds = 0;
  while (!report.valid && rounds < options.max_rounds) {
    ++rounds;
    Explanation refined = refine_explanation(expl, report, rules);
    if (rounds == 1) {
      // One enrichment retry on the refreshed segments; the final round keeps
      // the rule-based text, which is valid by construction.
      for (const SegmentReport& sr : report.segments) {
        if (sr.pass() || sr.index >= refined.segments.size()) continue;
        Segment& seg = refined.segments[sr.index];
        try {
          const std::string retry =
              backend.refine(seg.text, RefineDirective::Elaborate, seg.context);
          // the follow-up validate arbitrates; an empty retry is never applied
          if (!retry.empty()) {
            seg.text = retry;
            seg.provenance = Provenance::Enriched;
          }
        } catch (const std::exception& e) {
          enriched.warnings.push_back("segment " + std::to_string(sr.index) +
                                      " retry: " + e.what());
        }
      }
    }
    expl = std::move(refined);
    stage('V');
    report = validate(expl, tmpl);
  }
  if (!report.valid) {
    throw ValidationExhaustedError("explanation still invalid after " +
                                   std::to_string(options.max_rounds) + " refinement rounds");
  }
  return ValidatedExplanation{std::move(expl), std::move(report), rounds,
                              std::move(enriched.warnings)};
}

}  // namespace nst
