#pragma once

#include <stdexcept>
#include <string>

namespace coxpack {

// Base class for all library errors. Everything thrown on bad input or an
// unsatisfiable precondition derives from this, so callers can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// quadratic: the graph is of affine type, the quotient construction is skipped.
struct AffineInput : Error {
  using Error::Error;
};

// quadratic: reflection mirror has (numerically) zero norm.
struct IsotropicMirror : Error {
  using Error::Error;
};

// quadratic / orbit: the form does not have Lorentz signature (n-1, 0, 1).
struct NotLorentzian : Error {
  using Error::Error;
};

// quadratic: the direction-of-past candidate is not time-like.
struct NotTimelike : Error {
  using Error::Error;
};

// cone: the form is degenerate where a non-degenerate one is required.
struct DegenerateForm : Error {
  using Error::Error;
};

// graph parsing: malformed syntax, with the offending line recorded.
struct SyntaxError : Error {
  int line;
  SyntaxError(int line_, const std::string& what)
      : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// graph parsing: structurally valid but out-of-range values (vertex index,
// edge label below 3, dotted weight not > 1, ...).
struct RangeError : Error {
  int line;
  RangeError(int line_, const std::string& what)
      : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// orbit: budget exhausted before the requested sample set was filled.
struct InsufficientDepth : Error {
  using Error::Error;
};

// balls: vector is not space-like, no ball is associated with it.
struct NotSpaceLike : Error {
  using Error::Error;
};

// balls: rendering is implemented for plane packings only.
struct UnsupportedDimension : Error {
  using Error::Error;
};

// families: enumeration request has no finite answer without a label bound.
struct UnboundedFamily : Error {
  using Error::Error;
};

// families: no admissible dotted label (det root >= 1) exists.
struct NoValidRoot : Error {
  using Error::Error;
};

// families: both det roots are admissible and distinct; both values are kept.
struct AmbiguousRoot : Error {
  double first, second;
  AmbiguousRoot(double a, double b)
      : Error("ambiguous dotted label: " + std::to_string(a) + " and " +
              std::to_string(b)),
        first(a), second(b) {}
};

// families: splice requires label-isomorphic lateral subgraphs.
struct IncompatibleBases : Error {
  using Error::Error;
};

// families: combinatorial type is defined for corank-1 systems only.
struct NotCorankOne : Error {
  using Error::Error;
};

}  // namespace coxpack
