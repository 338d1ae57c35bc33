#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "nst/realizer.hpp"

namespace nst {

enum class RefineDirective { Elaborate, Simplify };

/// Pluggable text-refinement capability. refine() either returns non-empty
/// text or throws; it never fabricates silence. Implementations must be safe
/// for concurrent calls.
class RefinementBackend {
 public:
  virtual ~RefinementBackend() = default;
  virtual std::string refine(const std::string& text, RefineDirective directive,
                             const AttrMap& context) const = 0;
  virtual std::string label() const = 0;
  virtual bool deterministic() const = 0;
};

/// Deterministic phrase-substitution backend; reproduces the enriched
/// phrasings offline with no network access.
class OfflineBackend : public RefinementBackend {
 public:
  explicit OfflineBackend(std::vector<Substitution> substitutions);

  std::string refine(const std::string& text, RefineDirective directive,
                     const AttrMap& context) const override;
  std::string label() const override { return "offline"; }
  bool deterministic() const override { return true; }

 private:
  std::vector<Substitution> substitutions_;
};

/// Identity backend, useful for isolating the rest of the pipeline.
class PassthroughBackend : public RefinementBackend {
 public:
  std::string refine(const std::string& text, RefineDirective,
                     const AttrMap&) const override {
    return text;
  }
  std::string label() const override { return "passthrough"; }
  bool deterministic() const override { return true; }
};

/// Remote chat-completion backend over HTTP JSON. Configuration comes from
/// the environment unless supplied explicitly:
///   NST_ENRICH_URL, NST_ENRICH_API_KEY, NST_ENRICH_MODEL
struct RemoteBackendConfig {
  std::string url;
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
  std::chrono::milliseconds backoff{500};  // doubled per retry
};

class RemoteBackend : public RefinementBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);

  /// Reads the NST_ENRICH_* environment variables; throws ConfigError when
  /// the URL is missing.
  static RemoteBackendConfig config_from_env();

  std::string refine(const std::string& text, RefineDirective directive,
                     const AttrMap& context) const override;
  std::string label() const override { return "remote:" + config_.model; }
  bool deterministic() const override { return false; }

 private:
  RemoteBackendConfig config_;
};

struct EnrichResult {
  Explanation explanation;
  std::vector<std::string> warnings;  // one entry per per-segment fallback
};

/// Passes every segment through backend.refine with directive Elaborate.
/// Backend failures and numeral-dropping rewrites fall back to the original
/// segment text with fallbackUsed set; structure and traces are preserved.
EnrichResult enrich(const Explanation& expl, const RefinementBackend& backend);

}  // namespace nst
