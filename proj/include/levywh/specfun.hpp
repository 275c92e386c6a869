#pragma once

#include <complex>

#include "levywh/errors.hpp"

namespace levywh::specfun {

using Complex = std::complex<double>;

// Tuning knobs for the series evaluators.
struct SeriesControl {
  int max_terms = 1200;
  double rel_tol = 1e-11;
  // |z| at which evaluation switches from the Taylor series to the
  // large-argument expansion. The alternating series cancels at scale
  // e^{|z|}; double-double term arithmetic keeps it stable up to ~45,
  // while the asymptotic side only reaches the root-polish tolerances
  // beyond ~40, so the switch sits at 40.
  double large_arg_threshold = 40.0;

  void validate() const {
    if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("SeriesControl: rel_tol must be in (0,1)");
    if (!(large_arg_threshold > 0.0)) throw DomainError("SeriesControl: large_arg_threshold must be > 0");
  }
};

/// Gamma function for real argument, Lanczos approximation (g = 7, 9 terms).
/// Relative error below ~1e-13 away from the poles.
double gamma_fn(double s);

/// 1/Gamma(s); returns 0 at the poles s = 0, -1, -2, ...
double inv_gamma_fn(double s);

/// g(s,z) = z^{-s} gamma(s,z), the entire-in-z regularization of the lower
/// incomplete gamma function. Equals sum_{n>=0} (-1)^n z^n / (n! (s+n)).
/// Requires s not a non-positive integer.
Complex regularized_lower_gamma(double s, Complex z, const SeriesControl& ctl = {});

/// Kummer's confluent hypergeometric function 1F1(a, b; z) for real a, b.
/// Requires b not a non-positive integer.
Complex confluent_1f1(double a, double b, Complex z, const SeriesControl& ctl = {});

namespace detail {
// Regime-specific evaluators, exposed for the cross-regime agreement tests.
Complex lower_gamma_series(double s, Complex z, const SeriesControl& ctl);
Complex lower_gamma_asymptotic(double s, Complex z, const SeriesControl& ctl);
Complex onef1_series(double a, double b, Complex z, const SeriesControl& ctl);
Complex onef1_asymptotic(double a, double b, Complex z, const SeriesControl& ctl);
}  // namespace detail

}  // namespace levywh::specfun
