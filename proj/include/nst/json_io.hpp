#pragma once

#include <json.hpp>

#include "nst/realizer.hpp"
#include "nst/semantics.hpp"
#include "nst/strategy.hpp"
#include "nst/validation.hpp"

namespace nst {

using Json = nlohmann::ordered_json;

/// AST serialization mirroring the type structure; field order is stable so
/// the output can serve as a golden artifact.
Json template_to_json(const StrategyTemplate& tmpl);

Json expr_to_json(const MathExpr& e);

/// Node path -> role + attributes.
Json semrep_to_json(const SemanticRep& rep);

Json explanation_to_json(const Explanation& expl);
Explanation explanation_from_json(const Json& j);

Json report_to_json(const ValidationReport& report);

}  // namespace nst
