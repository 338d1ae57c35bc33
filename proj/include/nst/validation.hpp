#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nst/enrichment.hpp"
#include "nst/parser.hpp"
#include "nst/realizer.hpp"

namespace nst {

struct CheckResult {
  bool pass = true;
  std::vector<std::string> details;  // missing labels / constants / foreign numerals
};

struct SegmentReport {
  std::size_t index = 0;
  CheckResult entity_coverage;
  CheckResult numeric_round_trip;
  CheckResult no_foreign_numbers;

  bool pass() const {
    return entity_coverage.pass && numeric_round_trip.pass && no_foreign_numbers.pass;
  }
};

struct ValidationReport {
  bool valid = false;
  std::vector<SegmentReport> segments;
};

/// Numeric tolerance on recovered constants: accommodates two-decimal
/// rounding in layperson text.
constexpr double kNumericTolerance = 0.005;

/// Deterministic checks per segment: traced entities lexically present,
/// every traced constant recoverable (raw, rounded or percent form), and no
/// numeral that fails to map back to a template constant.
ValidationReport validate(const Explanation& expl, const StrategyTemplate& tmpl);

/// Replaces each failing segment with its rule-based realization in the
/// segment's own register; passing segments are untouched.
Explanation refine_explanation(const Explanation& expl, const ValidationReport& report,
                               const RuleSet& rules);

/// Pipeline stage markers: Parse, Semantics, Realize, Transform (enrich),
/// Customize, Validate.
using StageObserver = std::function<void(char)>;

struct PipelineOptions {
  ParseOptions parse;
  int max_rounds = 2;
  StageObserver observer;
};

struct ValidatedExplanation {
  Explanation explanation;
  ValidationReport report;
  int refinement_rounds = 0;
  std::vector<std::string> enrichment_warnings;
};

/// The whole pipeline in fixed order: parse, annotate, realize, enrich,
/// customize, validate, then up to max_rounds of refinement (first round
/// retries enrichment on refreshed segments, second falls back to pure
/// rule-based text). Throws ValidationExhaustedError if still invalid.
ValidatedExplanation explain_strategy(const std::string& source, Audience audience,
                                      const RefinementBackend& backend, const RuleSet& rules,
                                      const PipelineOptions& options = {});

}  // namespace nst
