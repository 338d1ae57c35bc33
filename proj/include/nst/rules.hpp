#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nst/semantics.hpp"

namespace nst {

enum class Audience { Expert, Layperson };

std::string audience_name(Audience a);

/// One predicate on a role attribute: bare name means "present and truthy",
/// name=value compares the rendered attribute.
struct AttrPredicate {
  std::string attr;
  std::optional<std::string> value;
};

/// A realization rule: role pattern plus one sentence template per audience.
/// {slot} placeholders resolve to role attributes or child phrases.
struct Rule {
  RoleKind kind = RoleKind::TimePhase;
  std::vector<AttrPredicate> predicates;
  std::string expert_template;
  std::string layperson_template;
};

class RuleSet {
 public:
  explicit RuleSet(std::vector<Rule> rules);

  /// Best match for a role: all predicates must hold, most predicates wins,
  /// earliest rule on ties. Throws MissingRoleError when nothing matches.
  const Rule& select(const SemanticRole& role) const;

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

/// Slots each role kind may legally expose; load-time slot validation.
const std::vector<std::string>& role_slots(RoleKind kind);

bool predicate_holds(const AttrPredicate& predicate, const AttrMap& attrs);

/// Parses the line-oriented rule file format:
///   RoleKind[+attr[=value]...] | expert template | layperson template
/// '#' starts a comment. Every role kind needs at least one predicate-free
/// rule; duplicate patterns are rejected.
RuleSet load_rules(const std::string& path);
RuleSet load_rules_from_string(const std::string& text);

/// Same line format reused by the offline refinement backend:
///   RoleKind[+preds] | literal text to find | replacement with {slots}
struct Substitution {
  RoleKind kind = RoleKind::TimePhase;
  std::vector<AttrPredicate> predicates;
  std::string pattern;
  std::string replacement;
};

std::vector<Substitution> load_substitutions(const std::string& path);
std::vector<Substitution> load_substitutions_from_string(const std::string& text);

}  // namespace nst
