#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levywh/models.hpp"

namespace levywh::oracles {

using levywh::Complex;

struct McConfig {
  long n_paths = 100000;
  double jump_cutoff_eps = 0.05;  // jumps below this are folded into drift/BM
  std::uint64_t seed = 1;
  bool antithetic = false;

  void validate(double k) const {
    if (n_paths < 1) throw DomainError("McConfig: n_paths must be >= 1");
    if (!(jump_cutoff_eps > 0.0 && jump_cutoff_eps < k))
      throw DomainError("McConfig: jump_cutoff_eps must lie in (0, k)");
  }
};

/// Name of the generator scheme, recorded in CLI output metadata.
inline const char* mc_generator_name() { return "xoshiro256++/splitmix64-streams"; }

/// Simulates n_paths of the supremum S_e(q) on an independent Exp(q)
/// horizon: big jumps by inverse-transform from tabulated tails, small jumps
/// folded into the drift (bounded variation) or a variance-matched Brownian
/// part (unbounded variation), running maximum on a grid of step
/// min(0.01, eps^2) with the expected-overshoot grid correction.
/// Returns the sorted sample.
std::vector<double> mc_supremum(const LevyModel& model, double q, const McConfig& cfg,
                                int n_threads = 1);

/// Numerical Bromwich inversion of 1/(psi_Y(z) - q): trapezoid with n_nodes
/// on the contour Re(z) = c, |Im(z)| <= im_cutoff. Requires c > Phi(q)
/// (checked against psi_Y(c) > q). Returns the value; *tail_estimate (when
/// given) receives an |integrand(T)|-based truncation heuristic and
/// *half_grid the estimate recomputed with every second node.
double bromwich_scale(const SpectrallyNegativeModel& model, double q, double x, double c,
                      double im_cutoff, long n_nodes, double* tail_estimate = nullptr,
                      double* half_grid = nullptr);

// Closed forms for X_t = k N_t, psi(z) = e^{kz} - 1.
struct PoissonReference {
  double q = 0.0;
  double k = 0.0;

  Complex root(long n) const {
    return {std::log1p(q) / k, 2.0 * 3.14159265358979323846 * double(n) / k};
  }
  Complex phi_plus_exact(Complex z) const {
    const double l = std::log1p(q);
    return std::exp(0.5 * k * z) * std::sinh(0.5 * l) / std::sinh(0.5 * (k * z + l));
  }
  double a0_exact() const { return q / (k * (1.0 + q)); }
};

PoissonReference closed_form_poisson(double q, double k);

}  // namespace levywh::oracles
