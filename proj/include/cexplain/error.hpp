#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cexplain {

// Raised when an operation is handed input outside its contract
// (sort mismatch, wrong arity, literal not true in the interpretation, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a configured limit is exceeded (grounding size, brute-force
// variable count, enumeration atom count). The message names the limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 1-based line/column range into a source text, plus the byte offset of the
// first character. `end_column` is exclusive.
struct Span {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t end_line = 1;
  std::size_t end_column = 1;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Diagnostic {
  std::string code;     // e.g. "syntax", "undeclared-predicate", "cyclic-definition"
  std::string message;
  std::string where;    // human-readable location ("axiom 2", "definition of safe")
  std::optional<Span> span;
};

// Source positions of parsed nodes, keyed by formula node identity.
using SpanMap = std::map<const void*, Span>;

inline std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  if (d.span) os << d.span->line << ':' << d.span->column << ": ";
  os << "error[" << d.code << "]: " << d.message;
  if (!d.where.empty()) os << " (in " << d.where << ')';
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) os << d << '\n';
  return os;
}

}  // namespace cexplain
