#include "levywh/wienerhopf.hpp"

#include <algorithm>
#include <cmath>

namespace levywh::wienerhopf {

namespace {

void check_pairs(const RootSet& rs, int n_pairs) {
  if (n_pairs < 0 || std::size_t(n_pairs) > rs.zetas.size())
    throw DomainError("n_pairs exceeds the available roots");
}

}  // namespace

Complex phi_plus(const RootSet& rs, Complex z, int n_pairs) {
  check_pairs(rs, n_pairs);
  if (z == Complex(0.0, 0.0)) return {1.0, 0.0};
  // log-space product; exp() at the end makes per-factor 2*pi*i branch slips
  // harmless for the value
  Complex log_sum = 0.5 * rs.jump_bound * z;
  const Complex f0 = 1.0 + z / rs.zeta0;
  if (std::abs(f0) < 1e-14) throw DomainError("phi_plus: z at a pole of the product");
  log_sum -= std::log(f0);
  for (int n = 0; n < n_pairs; ++n) {
    const Complex zn = rs.zetas[n];
    const Complex f1 = 1.0 + z / zn;
    const Complex f2 = 1.0 + z / std::conj(zn);
    if (std::abs(f1) < 1e-14 || std::abs(f2) < 1e-14)
      throw DomainError("phi_plus: z at a pole of the product");
    log_sum -= std::log(f1) + std::log(f2);
  }
  return std::exp(log_sum);
}

Complex phi_minus(const LevyModel& model, const RootSet& rs, Complex z, int n_pairs) {
  check_pairs(rs, n_pairs);
  if (z == Complex(0.0, 0.0)) return {1.0, 0.0};
  const Complex denom = rs.q - model.psi(z);
  const double scale = std::abs(model.psi_prime(z));
  if (std::abs(denom) < 1e-8 * std::max(1.0, scale))
    throw NearSingularError("phi_minus: z within working distance of a root of psi - q");
  return rs.q / denom / phi_plus(rs, -z, n_pairs);
}

SupremumDensity compute_residues(const LevyModel& model, const RootSet& rs, int n_pairs) {
  check_pairs(rs, n_pairs);
  if (n_pairs < 1) throw DomainError("compute_residues: need at least one root pair");
  const double k = rs.jump_bound;

  // pairwise-distinct guard (simple roots are assumed downstream)
  for (int n = 1; n < n_pairs; ++n)
    if (std::abs(rs.zetas[n] - rs.zetas[n - 1]) < 1e-8)
      throw DegenerateRootError("compute_residues: coincident roots");

  SupremumDensity sd;
  sd.roots = rs;
  sd.truncation = n_pairs;
  sd.density_defined = !(model.is_compound_poisson() && model.drift() <= 0.0);

  // a_0 = zeta_0 e^{-k zeta_0/2} prod |1 - zeta_0/zeta_m|^{-2}
  double log_a0 = std::log(rs.zeta0) - 0.5 * k * rs.zeta0;
  for (int m = 0; m < n_pairs; ++m)
    log_a0 -= 2.0 * std::log(std::abs(1.0 - rs.zeta0 / rs.zetas[m]));
  sd.a0 = std::exp(log_a0);

  // a_n = zeta_0 |zeta_n|^2 e^{-k zeta_n/2} / (2i Im(zeta_n)(zeta_n - zeta_0))
  //       * prod_{m != n} [(1 - zeta_n/zeta_m)(1 - zeta_n/conj zeta_m)]^{-1}
  sd.residues.resize(n_pairs);
  for (int n = 0; n < n_pairs; ++n) {
    const Complex zn = rs.zetas[n];
    Complex log_an = std::log(rs.zeta0) + 2.0 * std::log(std::abs(zn)) - 0.5 * k * zn -
                     std::log(Complex(0.0, 2.0 * zn.imag()) * (zn - rs.zeta0));
    for (int m = 0; m < n_pairs; ++m) {
      if (m == n) continue;
      const Complex zm = rs.zetas[m];
      log_an -= std::log(1.0 - zn / zm) + std::log(1.0 - zn / std::conj(zm));
    }
    sd.residues[n] = std::exp(log_an);
  }
  return sd;
}

DensityValue supremum_density(const SupremumDensity& sd, double x) {
  if (!(x > 0.0)) throw DomainError("supremum_density: x must be > 0");
  if (!sd.density_defined)
    throw UnsupportedModelError(
        "supremum_density: supremum has an atom at zero for a compound Poisson process with "
        "non-positive drift; use supremum_cdf");
  DensityValue out;
  double acc = sd.a0 * std::exp(-sd.roots.zeta0 * x);
  double last = 0.0;
  for (int n = 0; n < sd.truncation; ++n) {
    const Complex term = sd.residues[n] * std::exp(-sd.roots.zetas[n] * x);
    acc += 2.0 * term.real();
    last = 2.0 * std::abs(term);
  }
  out.value = acc;
  out.trunc_estimate = last;
  return out;
}

double series_total_mass(const SupremumDensity& sd) {
  double mass = sd.a0 / sd.roots.zeta0;
  for (int n = 0; n < sd.truncation; ++n)
    mass += 2.0 * (sd.residues[n] / sd.roots.zetas[n]).real();
  return mass;
}

CdfValue supremum_cdf(const SupremumDensity& sd, double x) {
  if (x < 0.0) throw DomainError("supremum_cdf: x must be >= 0");
  CdfValue out;
  out.mass_defect = std::abs(1.0 - series_total_mass(sd));
  if (x == 0.0) {
    out.value = 0.0;
    out.raw = 0.0;
    return out;
  }
  double acc = sd.a0 / sd.roots.zeta0 * (1.0 - std::exp(-sd.roots.zeta0 * x));
  for (int n = 0; n < sd.truncation; ++n) {
    const Complex zn = sd.roots.zetas[n];
    acc += 2.0 * (sd.residues[n] / zn * (1.0 - std::exp(-zn * x))).real();
  }
  out.raw = acc;
  out.value = std::clamp(acc, 0.0, 1.0 + out.mass_defect);
  return out;
}

}  // namespace levywh::wienerhopf
