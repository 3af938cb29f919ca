#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lassopath {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A restricted design submatrix X_T failed the full-column-rank test
/// sigma_min(X_T) > rank_tol * sigma_max(X_T). Carries the offending support
/// (0-based column indices).
class RankDeficient : public Error {
 public:
  RankDeficient(std::string message, std::vector<int> support)
      : Error(std::move(message)), support(std::move(support)) {}

  std::vector<int> support;
};

/// X^t y = 0: the solution is identically zero for every penalty level and
/// the path has no breakpoints.
class DegenerateProblem : public Error {
 public:
  using Error::Error;
};

/// The homotopy produced more segments than the cycling guard allows.
class IterationCap : public Error {
 public:
  using Error::Error;
};

/// The support/sign pair enumeration exceeds the configured budget.
class CombinatorialOverflow : public Error {
 public:
  using Error::Error;
};

/// The exhaustive combinatorial solver only works up to a hard cap on p.
class ProblemTooLarge : public Error {
 public:
  using Error::Error;
};

/// A lambda outside the computed path range was requested.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A finite-difference window crosses a path breakpoint.
class SpansBreakpoint : public Error {
 public:
  using Error::Error;
};

/// An operation requiring a nonempty active support was called where the
/// solution is zero.
class EmptySupport : public Error {
 public:
  using Error::Error;
};

/// Input file could not be parsed. The message is prefixed file:line:col.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, int line, int col, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ":" + std::to_string(col) +
              ": " + what),
        file(file),
        line(line),
        col(col) {}

  std::string file;
  int line;
  int col;
};

}  // namespace lassopath
