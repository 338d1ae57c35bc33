#include "nst/rules.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "nst/errors.hpp"

namespace nst {

std::string audience_name(Audience a) {
  return a == Audience::Expert ? "expert" : "layperson";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> cols;
  std::string current;
  for (char c : line) {
    if (c == '|') {
      cols.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  cols.push_back(trim(current));
  return cols;
}

struct Pattern {
  RoleKind kind;
  std::vector<AttrPredicate> predicates;
};

Pattern parse_pattern(const std::string& text, int line_no) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == '+') {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(trim(current));
  if (parts.empty() || parts[0].empty()) throw RuleFileError(line_no, "empty role pattern");
  Pattern p;
  try {
    p.kind = role_kind_from_name(parts[0]);
  } catch (const UnknownConstructError& e) {
    throw RuleFileError(line_no, e.what());
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].empty()) throw RuleFileError(line_no, "empty predicate in role pattern");
    AttrPredicate pred;
    const std::size_t eq = parts[i].find('=');
    if (eq == std::string::npos) {
      pred.attr = parts[i];
    } else {
      pred.attr = trim(parts[i].substr(0, eq));
      pred.value = trim(parts[i].substr(eq + 1));
    }
    p.predicates.push_back(std::move(pred));
  }
  return p;
}

std::string pattern_key(RoleKind kind, const std::vector<AttrPredicate>& preds) {
  std::string key = role_kind_name(kind);
  for (const AttrPredicate& p : preds) {
    key += "+" + p.attr;
    if (p.value) key += "=" + *p.value;
  }
  return key;
}

std::vector<std::string> extract_slots(const std::string& tmpl) {
  std::vector<std::string> slots;
  std::size_t i = 0;
  while ((i = tmpl.find('{', i)) != std::string::npos) {
    const std::size_t j = tmpl.find('}', i);
    if (j == std::string::npos) break;
    slots.push_back(tmpl.substr(i + 1, j - i - 1));
    i = j + 1;
  }
  return slots;
}

template <typename LineFn>
void for_each_content_line(const std::string& text, LineFn&& fn) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content[0] == '#') continue;
    fn(content, line_no);
  }
}

std::string read_file_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuleFileError(0, "cannot open rule file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

const std::vector<std::string>& role_slots(RoleKind kind) {
  static const std::array<std::vector<std::string>, kRoleKindCount> table = {{
      /* TimePhase */ {"percentStart", "percentEnd", "isInitial", "isFinal"},
      /* OfferUtility */ {"threshold", "hasCombinator", "percentStart", "percentEnd",
                          "isInitial", "isFinal", "part"},
      /* OwnPlannedBidUtility */ {"part"},
      /* ConcessionQuantile */ {"slope", "intercept", "slopeDirection", "linear"},
      /* DynamicThreshold */ {},
      /* FixedThreshold */ {"value", "symbolic"},
      /* ThresholdCombinator */ {"argCount", "childrenAnd"},
      /* LinearTimeTerm */ {"slope", "intercept", "slopeDirection", "linear", "part"},
      /* AcceptPredicate */ {"percentStart", "percentEnd", "isInitial", "isFinal",
                             "hasCombinator"},
      /* BidDirective */ {"tactic", "priority", "selected", "explicitParams", "e", "uMin",
                          "uMax", "slope", "intercept", "slopeDirection", "linear"},
  }};
  return table[static_cast<int>(kind)];
}

bool predicate_holds(const AttrPredicate& predicate, const AttrMap& attrs) {
  const auto it = attrs.find(predicate.attr);
  if (it == attrs.end()) return false;
  if (!predicate.value) {
    if (const auto* b = std::get_if<bool>(&it->second)) return *b;
    return true;  // present non-bool attribute counts as truthy
  }
  return attr_to_string(it->second) == *predicate.value;
}

RuleSet::RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {}

const Rule& RuleSet::select(const SemanticRole& role) const {
  const Rule* best = nullptr;
  std::size_t best_count = 0;
  for (const Rule& rule : rules_) {
    if (rule.kind != role.kind) continue;
    bool ok = true;
    for (const AttrPredicate& pred : rule.predicates) {
      if (!predicate_holds(pred, role.attrs)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!best || rule.predicates.size() > best_count) {
      best = &rule;
      best_count = rule.predicates.size();
    }
  }
  if (!best) throw MissingRoleError(role_kind_name(role.kind));
  return *best;
}

RuleSet load_rules_from_string(const std::string& text) {
  std::vector<Rule> rules;
  std::vector<std::string> seen_patterns;
  for_each_content_line(text, [&](const std::string& content, int line_no) {
    const std::vector<std::string> cols = split_columns(content);
    if (cols.size() != 3) {
      throw RuleFileError(line_no, "expected 'pattern | expert | layperson' (3 columns, got " +
                                       std::to_string(cols.size()) + ")");
    }
    const Pattern p = parse_pattern(cols[0], line_no);
    const std::string key = pattern_key(p.kind, p.predicates);
    for (const std::string& existing : seen_patterns) {
      if (existing == key) throw RuleFileError(line_no, "duplicate rule pattern " + key);
    }
    seen_patterns.push_back(key);
    if (cols[1].empty() || cols[2].empty()) {
      throw RuleFileError(line_no, "rule templates must be non-empty");
    }
    Rule rule;
    rule.kind = p.kind;
    rule.predicates = p.predicates;
    rule.expert_template = cols[1];
    rule.layperson_template = cols[2];
    // Validate slots against the role-attribute schema.
    const auto& known = role_slots(rule.kind);
    for (const std::string& tmpl : {rule.expert_template, rule.layperson_template}) {
      for (const std::string& slot : extract_slots(tmpl)) {
        bool ok = false;
        for (const std::string& k : known) ok = ok || k == slot;
        if (!ok) {
          throw RuleFileError(line_no, "slot {" + slot + "} is not resolvable for role " +
                                           role_kind_name(rule.kind));
        }
      }
    }
    rules.push_back(std::move(rule));
  });
  // Every role kind needs a predicate-free fallback rule.
  for (int i = 0; i < kRoleKindCount; ++i) {
    const auto kind = static_cast<RoleKind>(i);
    bool found = false;
    for (const Rule& rule : rules) {
      if (rule.kind == kind && rule.predicates.empty()) found = true;
    }
    if (!found) throw MissingRoleError(role_kind_name(kind));
  }
  return RuleSet(std::move(rules));
}

RuleSet load_rules(const std::string& path) {
  return load_rules_from_string(read_file_or_throw(path));
}

std::vector<Substitution> load_substitutions_from_string(const std::string& text) {
  std::vector<Substitution> subs;
  for_each_content_line(text, [&](const std::string& content, int line_no) {
    const std::vector<std::string> cols = split_columns(content);
    if (cols.size() != 3) {
      throw RuleFileError(line_no, "expected 'pattern | find | replace' (3 columns)");
    }
    const Pattern p = parse_pattern(cols[0], line_no);
    if (cols[1].empty() || cols[2].empty()) {
      throw RuleFileError(line_no, "substitution columns must be non-empty");
    }
    Substitution s;
    s.kind = p.kind;
    s.predicates = p.predicates;
    s.pattern = cols[1];
    s.replacement = cols[2];
    subs.push_back(std::move(s));
  });
  return subs;
}

std::vector<Substitution> load_substitutions(const std::string& path) {
  return load_substitutions_from_string(read_file_or_throw(path));
}

}  // namespace nst
