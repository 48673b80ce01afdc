#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sac/argument_graph.hpp"

namespace sac {
namespace casefile {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based

  bool operator==(const SourceSpan&) const = default;
};

enum class ErrorKind { Lex, Syntax, Semantic };

const char* to_string(ErrorKind kind);

struct ParseError {
  SourceSpan span;
  ErrorKind kind = ErrorKind::Syntax;
  std::string message;
};

struct ParseResult {
  std::optional<AssuranceCase> assurance_case;
  std::vector<ParseError> errors;     // lex/syntax/semantic, with spans
  std::vector<Finding> build_findings;  // duplicate ids, dangling refs

  bool ok() const { return assurance_case.has_value(); }
};

/// Parses the line-oriented casefile language. Collects every error it can
/// recover from in one pass; token-level semantic checks only, structural
/// checks live in validate_structure.
ParseResult parse(const std::string& text);

/// Canonical form: case line first, nodes in id byte order with block
/// emitted before the remaining attrs (sorted), edges sorted by
/// (source, target, rel), LF endings, single spaces. Byte-stable.
std::string serialize(const AssuranceCase& c);

std::string escape_qstring(const std::string& raw);

std::string format_error(const ParseError& e);

}  // namespace casefile
}  // namespace sac
