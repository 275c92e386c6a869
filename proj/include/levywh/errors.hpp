#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace levywh {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Model parameters violate a structural requirement (invalid family
// invariants, non-growing Laplace exponent, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// Model is valid but the requested operation is not defined for it
// (drift-free compound Poisson profile, atom of the supremum at zero, ...).
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

// A series failed to converge within the configured term budget.
// Carries the partial sum and the number of terms consumed.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, std::complex<double> partial, int terms)
      : Error(msg), partial_sum(partial), terms_used(terms) {}
  std::complex<double> partial_sum;
  int terms_used;
};

// A requested tolerance could not be met (non-integer winding after
// refinement, quadrature stall, ...).
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// A root of psi - q sits too close to a contour; the caller is expected
// to perturb the rectangle and retry.
class BoundaryRootError : public Error {
 public:
  using Error::Error;
};

// Subdivision descended past max_depth without isolating a single root.
class MultipleRootError : public Error {
 public:
  using Error::Error;
};

// Root bookkeeping failed (a strip holds 0 or >= 2 roots where exactly
// one was expected, counts disagree, an invariant broke).
class EnumerationError : public Error {
 public:
  using Error::Error;
};

// Two roots coincide within the dedup distance; residue formulas assume
// simple roots.
class DegenerateRootError : public Error {
 public:
  using Error::Error;
};

// Evaluation point is within working distance of a pole.
class NearSingularError : public Error {
 public:
  using Error::Error;
};

// Malformed run configuration (CLI layer).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace levywh
