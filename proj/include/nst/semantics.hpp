#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nst/strategy.hpp"

namespace nst {

enum class RoleKind {
  TimePhase,
  OfferUtility,
  OwnPlannedBidUtility,
  ConcessionQuantile,
  DynamicThreshold,
  FixedThreshold,
  ThresholdCombinator,
  LinearTimeTerm,
  AcceptPredicate,
  BidDirective,
};

constexpr int kRoleKindCount = 10;

std::string role_kind_name(RoleKind kind);
RoleKind role_kind_from_name(const std::string& name);

/// Attribute values attached to a role: numbers render per audience, strings
/// verbatim, booleans act as presence flags for rule predicates.
using AttrValue = std::variant<double, std::string, bool>;
using AttrMap = std::map<std::string, AttrValue>;

struct SemanticRole {
  RoleKind kind = RoleKind::TimePhase;
  AttrMap attrs;
};

/// Total mapping from template node paths to semantic roles, plus the
/// template-level facts the realizer needs.
struct SemanticRep {
  TemplateKind template_kind = TemplateKind::Acceptance;
  std::string template_name;
  std::map<std::string, SemanticRole> roles;  // node path -> role
};

/// Every addressable node of a template: phases, acceptance condition tree
/// nodes and bidding choices, in a stable path scheme
/// ("/phases/0", "/phases/0/cond/rhs/args/1", "/phases/1/bids/0").
std::vector<std::string> enumerate_nodes(const StrategyTemplate& tmpl);

/// Structural role assignment; total over enumerate_nodes(tmpl). Throws
/// UnknownConstructError for node kinds outside the shipped grammar.
SemanticRep annotate(const StrategyTemplate& tmpl);

/// Percent rendering of a phase interval, rounded half-up to 2 decimals,
/// with isInitial / isFinal flags.
AttrMap interval_phrase(const Phase& phase);

/// Half-up rounding to two decimals of a non-negative percentage.
double round_percent(double fraction);

std::string attr_to_string(const AttrValue& v);

}  // namespace nst
