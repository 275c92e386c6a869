#pragma once

#include <complex>
#include <vector>

#include "levywh/models.hpp"
#include "levywh/roots.hpp"

namespace levywh::wienerhopf {

using levywh::Complex;
using roots::RootSet;

/// Positive Wiener-Hopf factor E[e^{-z S_e(q)}] as the truncated product
/// e^{kz/2} (1+z/zeta_0)^{-1} prod_{n<=n_pairs} (1+z/zeta_n)^{-1}(1+z/conj zeta_n)^{-1},
/// accumulated in log space. Re(z) >= 0 is the natural domain; other z are
/// served by the same product (analytic continuation across poles excluded).
Complex phi_plus(const RootSet& rs, Complex z, int n_pairs);

/// Negative factor E[e^{z I_e(q)}] = q/(q - psi(z)) / phi_plus(-z).
Complex phi_minus(const LevyModel& model, const RootSet& rs, Complex z, int n_pairs);

// Residues of phi_q^+(iz) at z = -zeta_0 and z = -zeta_n (upper
// representatives); the coefficients of the supremum density series.
struct SupremumDensity {
  RootSet roots;
  double a0 = 0.0;
  std::vector<Complex> residues;
  int truncation = 0;
  // False when the supremum has an atom at zero (compound Poisson with
  // drift <= 0); density evaluation is refused, the CDF is still served.
  bool density_defined = true;
};

SupremumDensity compute_residues(const LevyModel& model, const RootSet& rs, int n_pairs);

struct DensityValue {
  double value = 0.0;
  double trunc_estimate = 0.0;  // magnitude of the last included term
};

/// Density of S_e(q) at x > 0: a0 e^{-zeta_0 x} + 2 sum Re(a_n e^{-zeta_n x}).
DensityValue supremum_density(const SupremumDensity& sd, double x);

struct CdfValue {
  double value = 0.0;        // clamped to [0, 1 + mass_defect]
  double raw = 0.0;          // unclamped series value
  double mass_defect = 0.0;  // |1 - total mass| of the truncated series
};

/// Term-wise integrated series for P(S_e(q) <= x), x >= 0.
CdfValue supremum_cdf(const SupremumDensity& sd, double x);

/// Total mass of the truncated series: a0/zeta_0 + 2 sum Re(a_n/zeta_n).
double series_total_mass(const SupremumDensity& sd);

}  // namespace levywh::wienerhopf
