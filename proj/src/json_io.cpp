#include "nst/json_io.hpp"

#include "nst/errors.hpp"

namespace nst {

namespace {

Json attrs_to_json(const AttrMap& attrs) {
  Json out = Json::object();
  for (const auto& [key, value] : attrs) {
    if (const auto* d = std::get_if<double>(&value)) {
      out[key] = *d;
    } else if (const auto* s = std::get_if<std::string>(&value)) {
      out[key] = *s;
    } else {
      out[key] = std::get<bool>(value);
    }
  }
  return out;
}

AttrMap attrs_from_json(const Json& j) {
  AttrMap out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_number()) {
      out[key] = value.get<double>();
    } else if (value.is_boolean()) {
      out[key] = value.get<bool>();
    } else {
      out[key] = value.get<std::string>();
    }
  }
  return out;
}

Json bid_tactic_to_json(const BidChoice& choice) {
  Json out = Json::object();
  if (const auto* b = std::get_if<BoulwareBid>(&choice.tactic)) {
    out["tactic"] = "boulware";
    if (b->explicit_params) {
      out["e"] = b->e;
      out["uMin"] = b->u_min;
      out["uMax"] = b->u_max;
    }
  } else if (const auto* p = std::get_if<ParetoWeightedBid>(&choice.tactic)) {
    out["tactic"] = "pareto";
    out["slope"] = p->slope;
    out["intercept"] = p->intercept;
  } else if (std::holds_alternative<OpponentGreedyBid>(choice.tactic)) {
    out["tactic"] = "opponentGreedy";
  } else {
    out["tactic"] = "randomAboveThreshold";
  }
  out["selected"] = choice.selected;
  return out;
}

Json accept_tactic_to_json(const AcceptanceTactic& tactic) {
  Json out = Json::object();
  if (std::holds_alternative<OwnNextBidUtility>(tactic)) {
    out["tactic"] = "ownNextBidUtility";
  } else if (const auto* q = std::get_if<QuantileConcession>(&tactic)) {
    out["tactic"] = "quantileConcession";
    out["slope"] = q->slope;
    out["intercept"] = q->intercept;
  } else if (std::holds_alternative<DynamicThreshold>(tactic)) {
    out["tactic"] = "dynamicThreshold";
  } else {
    const auto& f = std::get<FixedThreshold>(tactic);
    out["tactic"] = "fixedThreshold";
    out["value"] = f.value;
    out["symbolic"] = f.symbolic;
  }
  return out;
}

std::string plan_kind_tag(const PlanPhrase& phrase) { return role_kind_name(phrase.kind); }

Json plan_phrase_to_json(const PlanPhrase& phrase) {
  Json out = Json::object();
  out["role"] = plan_kind_tag(phrase);
  out["node"] = phrase.node_path;
  out["attrs"] = attrs_to_json(phrase.attrs);
  if (!phrase.children.empty()) {
    Json children = Json::array();
    for (const PlanPhrase& c : phrase.children) children.push_back(plan_phrase_to_json(c));
    out["children"] = std::move(children);
  }
  return out;
}

PlanPhrase plan_phrase_from_json(const Json& j) {
  PlanPhrase phrase;
  phrase.kind = role_kind_from_name(j.at("role").get<std::string>());
  phrase.node_path = j.at("node").get<std::string>();
  phrase.attrs = attrs_from_json(j.at("attrs"));
  if (j.contains("children")) {
    for (const Json& c : j.at("children")) phrase.children.push_back(plan_phrase_from_json(c));
  }
  return phrase;
}

}  // namespace

Json expr_to_json(const MathExpr& e) {
  Json out = Json::object();
  switch (e.kind) {
    case ExprKind::Constant:
      out["node"] = "constant";
      out["value"] = e.value;
      return out;
    case ExprKind::TimeSymbol:
      out["node"] = "time";
      return out;
    case ExprKind::Symbol:
      out["node"] = "symbol";
      out["symbol"] = symbol_name(e.symbol);
      return out;
    case ExprKind::Sum:
      out["node"] = "sum";
      break;
    case ExprKind::Product:
      out["node"] = "product";
      break;
    case ExprKind::FunctionApp:
      out["node"] = "functionApp";
      out["function"] = func_name(e.func);
      break;
    case ExprKind::Comparison:
      out["node"] = "comparison";
      out["op"] = ">=";
      break;
  }
  Json children = Json::array();
  for (const ExprPtr& c : e.children) children.push_back(expr_to_json(*c));
  out["children"] = std::move(children);
  return out;
}

Json template_to_json(const StrategyTemplate& tmpl) {
  Json out = Json::object();
  out["kind"] = tmpl.kind == TemplateKind::Acceptance ? "acceptance" : "bidding";
  out["name"] = tmpl.name;
  out["fixedThresholdDefault"] = tmpl.fixed_threshold_default;
  Json phases = Json::array();
  for (std::size_t i = 0; i < tmpl.phases.size(); ++i) {
    const Phase& p = tmpl.phases[i];
    Json jp = Json::object();
    jp["start"] = p.t_start;
    jp["end"] = p.t_end;
    jp["closedEnd"] = i + 1 == tmpl.phases.size();
    if (p.condition) {
      Json tactics = Json::array();
      for (const AcceptanceTactic& t : p.accept_tactics) {
        tactics.push_back(accept_tactic_to_json(t));
      }
      jp["tactics"] = std::move(tactics);
      jp["condition"] = expr_to_json(*p.condition);
    } else {
      Json bids = Json::array();
      for (const BidChoice& choice : p.bids) bids.push_back(bid_tactic_to_json(choice));
      jp["bids"] = std::move(bids);
    }
    phases.push_back(std::move(jp));
  }
  out["phases"] = std::move(phases);
  return out;
}

Json semrep_to_json(const SemanticRep& rep) {
  Json out = Json::object();
  out["template"] = rep.template_name;
  out["kind"] = rep.template_kind == TemplateKind::Acceptance ? "acceptance" : "bidding";
  Json roles = Json::object();
  for (const auto& [path, role] : rep.roles) {
    Json jr = Json::object();
    jr["role"] = role_kind_name(role.kind);
    jr["attrs"] = attrs_to_json(role.attrs);
    roles[path] = std::move(jr);
  }
  out["roles"] = std::move(roles);
  return out;
}

Json explanation_to_json(const Explanation& expl) {
  Json out = Json::object();
  out["template"] = expl.template_name;
  out["kind"] = expl.template_kind == TemplateKind::Acceptance ? "acceptance" : "bidding";
  out["audience"] = audience_name(expl.audience);
  if (!expl.backend_label.empty()) out["backend"] = expl.backend_label;
  out["metadata"] = Json{{"fixedThresholdDefault", expl.fixed_threshold_default}};
  Json segments = Json::array();
  for (const Segment& seg : expl.segments) {
    Json js = Json::object();
    js["text"] = seg.text;
    js["audience"] = audience_name(seg.audience);
    js["provenance"] = seg.provenance == Provenance::RuleBased ? "ruleBased" : "enriched";
    js["fallbackUsed"] = seg.fallback_used;
    js["trace"] = seg.trace;
    js["interpretive"] = seg.interpretive;
    Json plan = Json::array();
    for (const PlanSentence& sentence : seg.plan) {
      Json jp = Json::object();
      if (!sentence.prefix.empty()) jp["prefix"] = sentence.prefix;
      if (!sentence.fixed_text.empty()) {
        jp["fixedText"] = sentence.fixed_text;
        jp["node"] = sentence.phrase.node_path;
      } else {
        jp["phrase"] = plan_phrase_to_json(sentence.phrase);
      }
      if (sentence.interpretive) jp["interpretive"] = true;
      plan.push_back(std::move(jp));
    }
    js["plan"] = std::move(plan);
    js["context"] = attrs_to_json(seg.context);
    segments.push_back(std::move(js));
  }
  out["segments"] = std::move(segments);
  return out;
}

Explanation explanation_from_json(const Json& j) {
  Explanation expl;
  expl.template_name = j.at("template").get<std::string>();
  expl.template_kind = j.at("kind").get<std::string>() == "bidding" ? TemplateKind::Bidding
                                                                    : TemplateKind::Acceptance;
  expl.audience =
      j.at("audience").get<std::string>() == "expert" ? Audience::Expert : Audience::Layperson;
  if (j.contains("backend")) expl.backend_label = j.at("backend").get<std::string>();
  if (j.contains("metadata") && j.at("metadata").contains("fixedThresholdDefault")) {
    expl.fixed_threshold_default = j.at("metadata").at("fixedThresholdDefault").get<double>();
  }
  for (const Json& js : j.at("segments")) {
    Segment seg;
    seg.text = js.at("text").get<std::string>();
    seg.audience = js.at("audience").get<std::string>() == "expert" ? Audience::Expert
                                                                    : Audience::Layperson;
    seg.provenance = js.at("provenance").get<std::string>() == "enriched"
                         ? Provenance::Enriched
                         : Provenance::RuleBased;
    seg.fallback_used = js.at("fallbackUsed").get<bool>();
    seg.trace = js.at("trace").get<std::vector<std::string>>();
    seg.interpretive = js.at("interpretive").get<std::vector<std::string>>();
    if (js.contains("plan")) {
      for (const Json& jp : js.at("plan")) {
        PlanSentence sentence;
        if (jp.contains("prefix")) sentence.prefix = jp.at("prefix").get<std::string>();
        if (jp.contains("fixedText")) {
          sentence.fixed_text = jp.at("fixedText").get<std::string>();
          if (jp.contains("node")) sentence.phrase.node_path = jp.at("node").get<std::string>();
        } else {
          sentence.phrase = plan_phrase_from_json(jp.at("phrase"));
        }
        if (jp.contains("interpretive")) sentence.interpretive = jp.at("interpretive").get<bool>();
        seg.plan.push_back(std::move(sentence));
      }
    }
    if (js.contains("context")) seg.context = attrs_from_json(js.at("context"));
    expl.segments.push_back(std::move(seg));
  }
  return expl;
}

Json report_to_json(const ValidationReport& report) {
  Json out = Json::object();
  out["verdict"] = report.valid ? "valid" : "invalid";
  Json segments = Json::array();
  for (const SegmentReport& sr : report.segments) {
    Json js = Json::object();
    js["index"] = sr.index;
    js["entityCoverage"] =
        Json{{"pass", sr.entity_coverage.pass}, {"missing", sr.entity_coverage.details}};
    js["numericRoundTrip"] =
        Json{{"pass", sr.numeric_round_trip.pass}, {"missing", sr.numeric_round_trip.details}};
    js["noForeignNumbers"] =
        Json{{"pass", sr.no_foreign_numbers.pass}, {"foreign", sr.no_foreign_numbers.details}};
    segments.push_back(std::move(js));
  }
  out["segments"] = std::move(segments);
  return out;
}

}  // namespace nst
