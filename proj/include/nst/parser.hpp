#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nst/expr.hpp"
#include "nst/strategy.hpp"

namespace nst {

struct ParseOptions {
  // Value bound to the symbolic u_fixed tactic; recorded in template metadata.
  double fixed_threshold_default = 0.6;
};

/// Parses exactly one template from source. Throws SyntaxError or
/// StructureError; the returned template satisfies every core invariant.
StrategyTemplate parse_template(std::string_view source, const ParseOptions& options = {});

/// Parses one or more templates from a single source (agent bundles).
std::vector<StrategyTemplate> parse_templates(std::string_view source,
                                              const ParseOptions& options = {});

/// Identifiable units of an expression: a full tree walk into variables,
/// constants, functions and operators, plus the structure tree itself.
struct ParsedUnits {
  std::set<std::string> variables;
  std::set<double> constants;
  std::set<std::string> functions;
  std::set<std::string> operators;
  ExprPtr structure;
};

ParsedUnits decompose(const ExprPtr& expr);

/// Every numeric literal of a template: interval bounds, condition constants
/// and explicit bidding parameters. The validation checks key off this set.
std::vector<double> template_constants(const StrategyTemplate& tmpl);

}  // namespace nst
