#include "nst/realizer.hpp"

#include <algorithm>

#include "nst/errors.hpp"
#include "nst/printer.hpp"

namespace nst {

namespace {

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

std::string render_attr(const std::string& name, const AttrValue& value, Audience audience) {
  if (const auto* d = std::get_if<double>(&value)) {
    if (starts_with(name, "percent")) return render_fixed2(*d);
    return audience == Audience::Expert ? render_number(*d) : render_fixed2(*d);
  }
  return attr_to_string(value);
}

std::string join_and(const std::vector<std::string>& parts) {
  if (parts.empty()) return "";
  if (parts.size() == 1) return parts[0];
  std::string out;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += " and " + parts.back();
  return out;
}

std::string render_phrase(const PlanPhrase& phrase, Audience audience, const RuleSet& rules) {
  SemanticRole role{phrase.kind, phrase.attrs};
  const Rule& rule = rules.select(role);
  const std::string& tmpl =
      audience == Audience::Expert ? rule.expert_template : rule.layperson_template;

  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    const std::size_t close = tmpl.find('}', i);
    if (close == std::string::npos) {
      out += tmpl.substr(i);
      break;
    }
    const std::string slot = tmpl.substr(i + 1, close - i - 1);
    i = close + 1;
    if (slot == "childrenAnd") {
      std::vector<std::string> parts;
      parts.reserve(phrase.children.size());
      for (const PlanPhrase& child : phrase.children) {
        parts.push_back(render_phrase(child, audience, rules));
      }
      out += join_and(parts);
      continue;
    }
    if (slot == "threshold") {
      if (phrase.children.empty()) {
        throw SlotResolutionError("slot {threshold} used without a threshold child");
      }
      out += render_phrase(phrase.children.front(), audience, rules);
      continue;
    }
    const auto it = phrase.attrs.find(slot);
    if (it == phrase.attrs.end()) {
      throw SlotResolutionError("slot {" + slot + "} has no value for role " +
                                role_kind_name(phrase.kind) + " at " + phrase.node_path);
    }
    out += render_attr(slot, it->second, audience);
  }
  return out;
}

const SemanticRole& role_at(const SemanticRep& semrep, const std::string& path) {
  const auto it = semrep.roles.find(path);
  if (it == semrep.roles.end()) {
    throw SlotResolutionError("semantic representation has no role at " + path);
  }
  return it->second;
}

PlanPhrase phrase_tree(const SemanticRep& semrep, const std::string& path) {
  const SemanticRole& role = role_at(semrep, path);
  PlanPhrase phrase;
  phrase.kind = role.kind;
  phrase.attrs = role.attrs;
  phrase.node_path = path;
  if (role.kind == RoleKind::ThresholdCombinator) {
    const auto it = role.attrs.find("argCount");
    const int count = static_cast<int>(std::get<double>(it->second));
    for (int j = 0; j < count; ++j) {
      phrase.children.push_back(phrase_tree(semrep, path + "/args/" + std::to_string(j)));
    }
  }
  return phrase;
}

void collect_trace(const SemanticRep& semrep, const std::string& prefix,
                   std::vector<std::string>& trace) {
  for (const auto& [path, role] : semrep.roles) {
    if (path != prefix && !starts_with(path, prefix + "/")) continue;
    // unselected bidding options are neither rendered nor traced
    if (role.kind == RoleKind::BidDirective && !role.attrs.count("selected")) continue;
    trace.push_back(path);
  }
}

}  // namespace

std::string render_sentence(const PlanSentence& sentence, Audience audience,
                            const RuleSet& rules) {
  if (!sentence.fixed_text.empty()) return sentence.prefix + sentence.fixed_text;
  return sentence.prefix + render_phrase(sentence.phrase, audience, rules);
}

Explanation realize(const SemanticRep& semrep, const RuleSet& rules) {
  Explanation expl;
  expl.template_name = semrep.template_name;
  expl.template_kind = semrep.template_kind;
  expl.audience = Audience::Expert;

  // Header segment; kept free of numerals so validation stays clean.
  Segment header;
  header.audience = Audience::Expert;
  PlanSentence head;
  head.fixed_text =
      semrep.template_kind == TemplateKind::Acceptance
          ? "How the \"" + semrep.template_name +
                "\" strategy decides whether to accept an offer, phase by phase."
          : "How the \"" + semrep.template_name +
                "\" strategy chooses what to offer, phase by phase.";
  header.plan.push_back(head);
  header.text = render_sentence(header.plan.front(), expl.audience, rules);
  expl.segments.push_back(std::move(header));

  // One segment per phase, in phase order.
  for (std::size_t i = 0;; ++i) {
    const std::string base = "/phases/" + std::to_string(i);
    const auto it = semrep.roles.find(base);
    if (it == semrep.roles.end()) break;
    const SemanticRole& phase_role = it->second;

    Segment seg;
    seg.audience = Audience::Expert;
    seg.context = phase_role.attrs;
    collect_trace(semrep, base, seg.trace);
    {
      // advertise the traced role kinds to the refinement backends
      std::vector<std::string> kinds;
      for (const std::string& path : seg.trace) {
        const std::string name = role_kind_name(role_at(semrep, path).kind);
        if (std::find(kinds.begin(), kinds.end(), name) == kinds.end()) kinds.push_back(name);
      }
      std::sort(kinds.begin(), kinds.end());
      std::string joined;
      for (const std::string& name : kinds) {
        if (!joined.empty()) joined += ",";
        joined += name;
      }
      seg.context["roles"] = joined;
    }

    const std::string cond_path = base + "/cond";
    const bool has_condition = semrep.roles.count(cond_path) > 0;

    if (has_condition) {
      PlanSentence intro;
      intro.phrase.kind = RoleKind::AcceptPredicate;
      intro.phrase.attrs = role_at(semrep, cond_path).attrs;
      intro.phrase.node_path = cond_path;
      seg.plan.push_back(std::move(intro));
    }

    PlanSentence when;
    when.phrase.kind = RoleKind::TimePhase;
    when.phrase.attrs = phase_role.attrs;
    when.phrase.node_path = base;
    seg.plan.push_back(std::move(when));

    if (has_condition) {
      PlanSentence cond;
      cond.phrase = phrase_tree(semrep, cond_path + "/lhs");
      cond.phrase.attrs = role_at(semrep, cond_path).attrs;  // carries hasCombinator
      cond.phrase.children.push_back(phrase_tree(semrep, cond_path + "/rhs"));
      seg.plan.push_back(std::move(cond));

      // Interpretive notes on non-flat concession slopes: a falling quantile
      // index demands better offers, a rising one relaxes the requirement.
      std::vector<std::pair<std::string, std::string>> notes;
      for (const auto& [path, role] : semrep.roles) {
        if (role.kind != RoleKind::ConcessionQuantile) continue;
        if (path.rfind(base + "/", 0) != 0) continue;
        const auto dir = role.attrs.find("slopeDirection");
        if (dir == role.attrs.end()) continue;
        const std::string direction = attr_to_string(dir->second);
        if (direction == "flat") continue;
        notes.emplace_back(path, direction);
      }
      std::sort(notes.begin(), notes.end());
      for (const auto& [path, direction] : notes) {
        PlanSentence note;
        note.fixed_text = direction == "falling"
                              ? "Along the way, the bar becomes stricter over time."
                              : "Along the way, the bar becomes easier over time.";
        note.interpretive = true;
        note.phrase.node_path = path;
        seg.plan.push_back(std::move(note));
        seg.interpretive.push_back(path);
      }
    } else {
      // Bidding phase: one sentence per selected option, priority order.
      bool first = true;
      for (std::size_t j = 0;; ++j) {
        const std::string bid_path = base + "/bids/" + std::to_string(j);
        const auto bit = semrep.roles.find(bid_path);
        if (bit == semrep.roles.end()) break;
        if (!bit->second.attrs.count("selected")) continue;
        PlanSentence option;
        option.phrase.kind = RoleKind::BidDirective;
        option.phrase.attrs = bit->second.attrs;
        option.phrase.node_path = bid_path;
        option.prefix = first ? "First choice: " : "Otherwise: ";
        first = false;
        seg.plan.push_back(std::move(option));
      }
    }

    std::string text;
    for (const PlanSentence& sentence : seg.plan) {
      if (!text.empty()) text += " ";
      text += render_sentence(sentence, expl.audience, rules);
    }
    seg.text = std::move(text);
    expl.segments.push_back(std::move(seg));
  }
  return expl;
}

Explanation customize(const Explanation& expl, Audience audience, const RuleSet& rules) {
  Explanation out = expl;
  out.audience = audience;
  for (Segment& seg : out.segments) {
    if (seg.audience == audience) continue;  // keep text (and any enrichment)
    std::string text;
    for (const PlanSentence& sentence : seg.plan) {
      if (!text.empty()) text += " ";
      text += render_sentence(sentence, audience, rules);
    }
    seg.text = std::move(text);
    seg.audience = audience;
    seg.provenance = Provenance::RuleBased;
    seg.fallback_used = false;
  }
  return out;
}

}  // namespace nst
