#pragma once

#include <stdexcept>
#include <string>

namespace frog {

// Error taxonomy shared by the whole library. The C wrapper maps each class
// onto a status code, so new error kinds need a counterpart there.

struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside a function's mathematical domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Geometric-style sampling with ratio exactly 1: the draw never terminates.
struct NonTerminatingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedFamilyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed law/eta spec text; messages carry a column offset.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Quadrature non-convergence, missing density, failed sampler construction.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value collapsed below the representable floor; distinct from a true zero.
struct UnderflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace frog
