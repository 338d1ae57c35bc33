#include "nst/errors.hpp"

namespace nst {

namespace {

std::string format_span(const SourceSpan& span) {
  if (!span.valid()) return "";
  return "line " + std::to_string(span.line) + ", col " + std::to_string(span.column) + ": ";
}

}  // namespace

SyntaxError::SyntaxError(SourceSpan span, std::string expected, std::string found)
    : Error(format_span(span) + "expected " + expected + ", found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

StructureError::StructureError(const std::string& message, SourceSpan span)
    : Error(format_span(span) + message), span_(span) {}

RuleFileError::RuleFileError(int line, const std::string& reason)
    : Error("rule file line " + std::to_string(line) + ": " + reason), line_(line) {}

MissingRoleError::MissingRoleError(const std::string& role_kind)
    : Error("rule file covers no rule for role " + role_kind), role_kind_(role_kind) {}

ScenarioError::ScenarioError(std::string field_path, const std::string& reason)
    : Error("scenario field " + field_path + ": " + reason), field_path_(std::move(field_path)) {}

}  // namespace nst
