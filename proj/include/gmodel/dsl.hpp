#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gmodel/metamodel.hpp"

namespace gmodel {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;
  bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
  SourceSpan span;
  std::string expected;  // e.g. "'platform' or 'application'"
  std::string found;     // offending lexeme, or "end of input"

  /// `line:col: expected X, found Y`
  std::string message() const;
  bool operator==(const ParseError&) const = default;
};

/// Either a structurally well-formed model or every recoverable error.
class ParseResult {
public:
  explicit ParseResult(Model model) : value_(std::move(model)) {}
  explicit ParseResult(std::vector<ParseError> errors) : value_(std::move(errors)) {}

  bool ok() const noexcept { return std::holds_alternative<Model>(value_); }
  explicit operator bool() const noexcept { return ok(); }

  const Model& model() const& { return std::get<Model>(value_); }
  Model&& model() && { return std::get<Model>(std::move(value_)); }
  const std::vector<ParseError>& errors() const& { return std::get<std::vector<ParseError>>(value_); }

private:
  std::variant<Model, std::vector<ParseError>> value_;
};

/// Parses the line-oriented model language:
///
///     platform <Root> { component ... }
///     application <Root> { size N = 16  component ... }
///     allocate data <port path> onto <memory path> [as <qualifier>]
///     allocate task <task path> onto <processor path>
///
/// Errors are collected with statement-level resynchronisation and returned
/// ordered by position. Paths are not resolved here.
ParseResult parse_model(std::string_view text);

/// Canonical text: fixed statement order, two-space indentation, LF endings.
std::string serialize_model(const Model& model);

}  // namespace gmodel
