#pragma once

#include <string>
#include <vector>

#include "nst/rules.hpp"
#include "nst/semantics.hpp"

namespace nst {

enum class Provenance { RuleBased, Enriched };

/// Self-contained rendering node: everything needed to re-render a sentence
/// for another audience without going back to the template.
struct PlanPhrase {
  RoleKind kind = RoleKind::TimePhase;
  AttrMap attrs;
  std::string node_path;
  std::vector<PlanPhrase> children;  // nested threshold phrases
};

struct PlanSentence {
  PlanPhrase phrase;
  std::string prefix;       // e.g. "First choice: " on bidding options
  std::string fixed_text;   // verbatim sentence (header, interpretive notes)
  bool interpretive = false;
};

struct Segment {
  std::string text;
  Audience audience = Audience::Expert;
  Provenance provenance = Provenance::RuleBased;
  bool fallback_used = false;
  std::vector<std::string> trace;         // node paths this segment covers
  std::vector<std::string> interpretive;  // traced nodes with interpretive notes
  std::vector<PlanSentence> plan;
  AttrMap context;                        // role attributes handed to backends
};

struct Explanation {
  std::string template_name;
  TemplateKind template_kind = TemplateKind::Acceptance;
  Audience audience = Audience::Expert;
  std::string backend_label;  // set by the enrichment stage
  double fixed_threshold_default = 0.6;
  std::vector<Segment> segments;
};

/// Rule-based realization: a header segment plus one segment per phase, in
/// the default expert register. Every template constant is rendered.
Explanation realize(const SemanticRep& semrep, const RuleSet& rules);

/// Audience customization. Segments already in the target register keep
/// their text (enrichment survives); otherwise each sentence is re-rendered
/// from its rule's audience variant. Traces are preserved.
Explanation customize(const Explanation& expl, Audience audience, const RuleSet& rules);

/// Renders one planned sentence for an audience (used by realize/customize
/// and by validation's rule-based fallback).
std::string render_sentence(const PlanSentence& sentence, Audience audience,
                            const RuleSet& rules);

}  // namespace nst
