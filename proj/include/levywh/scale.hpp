#pragma once

#include <utility>
#include <vector>

#include "levywh/models.hpp"
#include "levywh/roots.hpp"

namespace levywh::scale {

using levywh::Complex;

// Everything needed to evaluate W^(q): Phi(q), the dual-equation roots and
// the residue coefficients 1/psi_Y'(.) precomputed at the poles.
struct ScaleContext {
  SpectrallyNegativeModel model;
  double q = 0.0;
  double phi_q = 0.0;
  roots::RootSet dual_roots;              // roots of psi_Y(-z) = q in Q1
  double lead_coeff = 0.0;                // 1 / psi_Y'(Phi(q))
  double zeta0_coeff = 0.0;               // 1 / psi_Y'(-zeta_0)
  std::vector<Complex> pair_coeffs;       // 1 / psi_Y'(-zeta_n)
  int n_terms = 0;
  double x_min = 1e-4;                    // evaluation floor (configurable)
};

/// Solves psi_Y(Phi) = q, assembles the dual RootSet, validates simplicity.
/// q = 0 is accepted only when psi_Y'(0) < 0 (so Phi(0) > 0); the dual real
/// root then degenerates to zeta_0 = 0.
ScaleContext build_scale_context(const SpectrallyNegativeModel& model, double q, int n_terms,
                                 const roots::RootSearchConfig& cfg = {});

struct ScaleValue {
  double value = 0.0;
  double trunc_estimate = 0.0;  // magnitude of the last included pair term
};

/// W^(q)(x) by the root series. x <= 0 returns 0; 0 < x < ctx.x_min is
/// refused (truncation error near zero is unbounded).
double scale_function(const ScaleContext& ctx, double x);
ScaleValue scale_function_with_estimate(const ScaleContext& ctx, double x);

/// Self-test pair: (adaptive-Simpson integral of e^{-zx} W^(q)(x) over
/// (0, upper], analytic 1/(psi_Y(z) - q)). Requires z > Phi(q).
std::pair<double, double> scale_laplace_check(const ScaleContext& ctx, double z, double upper);

}  // namespace levywh::scale
