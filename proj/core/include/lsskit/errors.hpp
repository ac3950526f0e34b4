#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsskit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values that were expected to live over the same ground set do not.
class GroundMismatchError : public Error {
 public:
  using Error::Error;
};

/// A value violates one of its declared structural invariants
/// (a scale that does not cover, a metric that is not symmetric, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An operation precondition does not hold (e.g. a map that is not a
/// coarse equivalence was passed to a transfer routine).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exact enumeration was asked to run past its configured budget.
/// Deliberately distinct from a "false" verdict: exceeding a budget is
/// not a disproof of anything.
class OracleLimitError : public Error {
 public:
  using Error::Error;
};

/// A covering subroutine was handed a target that the base family cannot
/// cover at all. Cannot happen when the base is a scale; kept as a guard.
class CoverInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. Carries a position when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0,
             std::string field = {})
      : Error(render(message, line, column, field)),
        line_(line),
        column_(column),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  static std::string render(const std::string& message, std::size_t line, std::size_t column,
                            const std::string& field) {
    std::string out = message;
    if (line > 0) {
      out += " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    }
    if (!field.empty()) {
      out += " [at " + field + "]";
    }
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::string field_;
};

/// Budgets for the exact (NP-hard at scale) subroutines. All enumerations
/// are exact below these sizes and refuse to run above them.
struct OracleLimits {
  std::size_t net_enumeration_ambient = 20;  ///< max |ambient| for net enumeration
  std::size_t cover_universe = 20;           ///< max |target| for exact minimum covers
  std::size_t cover_base = 64;               ///< max number of base elements for covers
  std::size_t search_ground = 10;            ///< max |X| for exhaustive witness search
  unsigned search_max_level = 3;             ///< max level budget for witness search
  std::size_t search_candidates = 20;        ///< max candidate pairs per point in search

  /// Reads LSSKIT_ORACLE_LIMIT. A single integer n raises the enumeration
  /// caps: ambient, cover universe and search ground become n, and the
  /// cover base cap becomes max(64, n).
  static OracleLimits from_env();
};

}  // namespace lsskit
