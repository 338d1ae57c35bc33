#pragma once

#include <stdexcept>
#include <string>

namespace nst {

/// Position of a token inside DSL source text. Lines and columns are 1-based.
struct SourceSpan {
  int line = 0;
  int column = 0;
  int length = 0;

  bool valid() const { return line > 0 && column > 0; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or grammatical error with the offending span.
class SyntaxError : public Error {
 public:
  SyntaxError(SourceSpan span, std::string expected, std::string found);

  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

/// Well-formed text that violates a template invariant (phase tiling,
/// empty tactic lists, constants outside their declared range).
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& message, SourceSpan span = {});
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

class RuleFileError : public Error {
 public:
  RuleFileError(int line, const std::string& reason);
  int line() const { return line_; }

 private:
  int line_ = 0;
};

class MissingRoleError : public Error {
 public:
  explicit MissingRoleError(const std::string& role_kind);
  const std::string& role_kind() const { return role_kind_; }

 private:
  std::string role_kind_;
};

class SlotResolutionError : public Error {
 public:
  using Error::Error;
};

class UnknownConstructError : public Error {
 public:
  using Error::Error;
};

class ValidationExhaustedError : public Error {
 public:
  using Error::Error;
};

class ScenarioError : public Error {
 public:
  ScenarioError(std::string field_path, const std::string& reason);
  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

class EngineError : public Error {
 public:
  using Error::Error;
};

class DomainMismatchError : public EngineError {
 public:
  using EngineError::EngineError;
};

class EmptyHistoryError : public EngineError {
 public:
  using EngineError::EngineError;
};

class DomainTooLargeError : public EngineError {
 public:
  using EngineError::EngineError;
};

class ConfigError : public EngineError {
 public:
  using EngineError::EngineError;
};

}  // namespace nst
