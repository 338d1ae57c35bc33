#include "nst/enrichment.hpp"

#include <cstdlib>
#include <map>
#include <thread>

#include "nst/errors.hpp"
#include "nst/numerals.hpp"
#include "nst/printer.hpp"
#include "nst/semantics.hpp"

#include <httplib.h>
#include <json.hpp>

namespace nst {

namespace {

std::string fill_slots(const std::string& tmpl, const AttrMap& context, bool& ok) {
  std::string out;
  ok = true;
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
    const auto it = context.find(slot);
    if (it == context.end()) {
      ok = false;
      return "";
    }
    if (const auto* d = std::get_if<double>(&it->second)) {
      out += slot.rfind("percent", 0) == 0 ? render_fixed2(*d) : render_number(*d);
    } else {
      out += attr_to_string(it->second);
    }
    i = close + 1;
  }
  return out;
}

void replace_all(std::string& text, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Every numeral lexeme of the input must survive, with multiplicity.
bool numerals_preserved(const std::string& before, const std::string& after) {
  std::map<std::string, int> counts;
  for (const Numeral& n : extract_numerals(before)) ++counts[n.lexeme];
  for (const Numeral& n : extract_numerals(after)) --counts[n.lexeme];
  for (const auto& [lexeme, count] : counts) {
    if (count > 0) return false;
  }
  return true;
}

struct ParsedUrl {
  bool https = false;
  std::string host_port;
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  ParsedUrl out;
  std::string rest;
  if (url.rfind("https://", 0) == 0) {
    out.https = true;
    rest = url.substr(8);
  } else if (url.rfind("http://", 0) == 0) {
    rest = url.substr(7);
  } else {
    throw ConfigError("remote backend URL must start with http:// or https://");
  }
  const std::size_t slash = rest.find('/');
  out.host_port = slash == std::string::npos ? rest : rest.substr(0, slash);
  out.path = slash == std::string::npos ? "/" : rest.substr(slash);
  return out;
}

}  // namespace

OfflineBackend::OfflineBackend(std::vector<Substitution> substitutions)
    : substitutions_(std::move(substitutions)) {}

namespace {

// Substitution entries are keyed by role kind; a segment advertises the role
// kinds it traces through the "roles" context attribute. Contexts without
// that attribute (direct refine calls) accept any key.
bool role_key_matches(RoleKind kind, const AttrMap& context) {
  const auto it = context.find("roles");
  if (it == context.end()) return true;
  const std::string roles = "," + attr_to_string(it->second) + ",";
  return roles.find("," + role_kind_name(kind) + ",") != std::string::npos;
}

}  // namespace

std::string OfflineBackend::refine(const std::string& text, RefineDirective,
                                   const AttrMap& context) const {
  std::string out = text;
  for (const Substitution& sub : substitutions_) {
    if (!role_key_matches(sub.kind, context)) continue;
    bool applies = true;
    for (const AttrPredicate& pred : sub.predicates) {
      if (!predicate_holds(pred, context)) {
        applies = false;
        break;
      }
    }
    if (!applies) continue;
    bool ok = false;
    const std::string replacement = fill_slots(sub.replacement, context, ok);
    if (!ok) continue;  // entry needs context this segment does not carry
    replace_all(out, sub.pattern, replacement);
  }
  return out;
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  if (config_.url.empty()) throw ConfigError("remote backend needs an endpoint URL");
}

RemoteBackendConfig RemoteBackend::config_from_env() {
  RemoteBackendConfig config;
  if (const char* url = std::getenv("NST_ENRICH_URL")) config.url = url;
  if (const char* key = std::getenv("NST_ENRICH_API_KEY")) config.api_key = key;
  if (const char* model = std::getenv("NST_ENRICH_MODEL")) config.model = model;
  if (config.url.empty()) {
    throw ConfigError("NST_ENRICH_URL is not set; the remote backend needs an endpoint");
  }
  if (config.model.empty()) config.model = "default";
  return config;
}

std::string RemoteBackend::refine(const std::string& text, RefineDirective directive,
                                  const AttrMap&) const {
  const ParsedUrl url = parse_url(config_.url);

  nlohmann::ordered_json request;
  request["model"] = config_.model;
  request["temperature"] = 0;
  request["messages"] = nlohmann::ordered_json::array();
  request["messages"].push_back(
      {{"role", "system"},
       {"content",
        "Rewrite the user's text for clarity; preserve all numbers verbatim. "
        "Reply with the rewritten text only."}});
  const std::string instruction =
      directive == RefineDirective::Elaborate ? "Elaborate: " : "Simplify: ";
  request["messages"].push_back({{"role", "user"}, {"content", instruction + text}});
  const std::string body = request.dump();

  std::string last_error = "no attempt made";
  auto backoff = config_.backoff;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Result res;
    auto call = [&](auto& client) {
      client.set_connection_timeout(config_.timeout);
      client.set_read_timeout(config_.timeout);
      httplib::Headers headers;
      if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
      }
      res = client.Post(url.path, headers, body, "application/json");
    };
    if (url.https) {
      httplib::SSLClient client(url.host_port);
      call(client);
    } else {
      httplib::Client client(url.host_port);
      call(client);
    }
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    try {
      const auto parsed = nlohmann::json::parse(res->body);
      const std::string content =
          parsed.at("choices").at(0).at("message").at("content").get<std::string>();
      if (content.empty()) {
        last_error = "backend returned empty text";
        continue;
      }
      return content;
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("malformed response: ") + e.what();
    }
  }
  throw Error("remote refinement failed after " + std::to_string(config_.retries + 1) +
              " attempts: " + last_error);
}

EnrichResult enrich(const Explanation& expl, const RefinementBackend& backend) {
  EnrichResult result;
  result.explanation = expl;
  result.explanation.backend_label = backend.label();
  for (std::size_t i = 0; i < result.explanation.segments.size(); ++i) {
    Segment& seg = result.explanation.segments[i];
    std::string refined;
    std::string failure;
    try {
      refined = backend.refine(seg.text, RefineDirective::Elaborate, seg.context);
      if (refined.empty()) failure = "backend returned empty text";
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (failure.empty() && !numerals_preserved(seg.text, refined)) {
      failure = "refinement dropped a numeral";
    }
    if (failure.empty()) {
      seg.text = refined;
      seg.fallback_used = false;
    } else {
      seg.fallback_used = true;
      result.warnings.push_back("segment " + std::to_string(i) + ": " + failure);
    }
    seg.provenance = Provenance::Enriched;
  }
  return result;
}

}  // namespace nst
