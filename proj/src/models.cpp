#include "levywh/models.hpp"

#include <cmath>

namespace levywh {

namespace {

constexpr double kPi = 3.14159265358979323846;

using specfun::gamma_fn;

// Tight internal tolerance: psi - q vanishes at roots while g itself is
// large there, so g must carry far more relative accuracy than the
// user-facing default for root polishing to reach 1e-11 (1+q).
const specfun::SeriesControl kModelSeries{1600, 1e-15, 40.0};

Complex regularized_lower_gamma(double s, Complex z) {
  return specfun::regularized_lower_gamma(s, z, kModelSeries);
}

bool valid_stable_index(double a) {
  return a < 2.0 && a != 0.0 && a != 1.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncatedKobolModel

TruncatedKobolModel::TruncatedKobolModel(const KobolParams& p) : p_(p) {
  if (p_.sigma < 0.0) throw ModelError("kobol: sigma must be >= 0");
  if (p_.c_pos < 0.0 || p_.c_neg < 0.0) throw ModelError("kobol: c_pos, c_neg must be >= 0");
  if (p_.c_pos > 0.0 && !valid_stable_index(p_.alpha_pos))
    throw ModelError("kobol: alpha_pos must lie in (-inf,2) excluding {0,1}");
  if (p_.c_neg > 0.0 && !valid_stable_index(p_.alpha_neg))
    throw ModelError("kobol: alpha_neg must lie in (-inf,2) excluding {0,1}");
  if (p_.beta_pos <= 0.0 || p_.beta_neg <= 0.0) throw ModelError("kobol: beta_pos, beta_neg must be > 0");
  if (p_.jump_bound <= 0.0) throw ModelError("kobol: jump bound k must be > 0");
  const bool finite_activity =
      (p_.c_pos == 0.0 || p_.alpha_pos < 0.0) && (p_.c_neg == 0.0 || p_.alpha_neg < 0.0);
  if (p_.sigma == 0.0 && p_.mu == 0.0 && finite_activity)
    throw ModelError("kobol: drift-free compound Poisson is not admissible");

  gamma_neg_ = p_.c_neg > 0.0 ? gamma_fn(1.0 - p_.alpha_neg) : 0.0;

  // eta so that psi(0) = 0 exactly, computed once in real arithmetic
  double at0 = 0.0;
  if (p_.c_neg > 0.0) at0 -= p_.c_neg * gamma_neg_ * std::pow(p_.beta_neg, p_.alpha_neg);
  if (p_.c_pos > 0.0) {
    const double a = p_.alpha_pos, k = p_.jump_bound;
    at0 += p_.c_pos * a * std::pow(k, -a) *
           regularized_lower_gamma(-a, Complex(k * p_.beta_pos, 0.0)).real();
  }
  eta_ = -at0;
}

Complex TruncatedKobolModel::psi(Complex z) const {
  if (p_.c_neg > 0.0 && z.real() <= -p_.beta_neg)
    throw DomainError("kobol psi: Re(z) must exceed -beta_neg");
  Complex v = 0.5 * p_.sigma * p_.sigma * z * z + p_.mu * z + eta_;
  if (p_.c_neg > 0.0) v -= p_.c_neg * gamma_neg_ * std::pow(p_.beta_neg + z, p_.alpha_neg);
  if (p_.c_pos > 0.0) {
    const double a = p_.alpha_pos, k = p_.jump_bound;
    v += p_.c_pos * a * std::pow(k, -a) * regularized_lower_gamma(-a, k * (p_.beta_pos - z));
  }
  return v;
}

Complex TruncatedKobolModel::psi_prime(Complex z) const {
  if (p_.c_neg > 0.0 && z.real() <= -p_.beta_neg)
    throw DomainError("kobol psi_prime: Re(z) must exceed -beta_neg");
  Complex v = p_.sigma * p_.sigma * z + p_.mu;
  if (p_.c_neg > 0.0)
    v -= p_.c_neg * gamma_neg_ * p_.alpha_neg * std::pow(p_.beta_neg + z, p_.alpha_neg - 1.0);
  if (p_.c_pos > 0.0) {
    // d/dz g(-a, k(b-z)) = k g(1-a, k(b-z))
    const double a = p_.alpha_pos, k = p_.jump_bound;
    v += p_.c_pos * a * std::pow(k, 1.0 - a) * regularized_lower_gamma(1.0 - a, k * (p_.beta_pos - z));
  }
  return v;
}

VariationClass TruncatedKobolModel::variation_class() const {
  const bool unbounded = p_.sigma > 0.0 || (p_.c_pos > 0.0 && p_.alpha_pos > 1.0) ||
                         (p_.c_neg > 0.0 && p_.alpha_neg > 1.0);
  return unbounded ? VariationClass::unbounded_variation : VariationClass::bounded_variation;
}

AsymptoticProfile TruncatedKobolModel::asymptotic_profile() const {
  if (p_.c_pos == 0.0)
    throw UnsupportedModelError("kobol profile: no positive jump mass, exponential term vanishes");
  const double a = p_.alpha_pos, k = p_.jump_bound;
  // density positive at the truncation boundary: n = 1
  const Complex A(p_.c_pos * a * std::exp(-p_.beta_pos * k) * std::pow(k, -1.0 - a), 0.0);

  const double ap = p_.c_pos > 0.0 ? p_.alpha_pos : -std::numeric_limits<double>::infinity();
  const double an = p_.c_neg > 0.0 ? p_.alpha_neg : -std::numeric_limits<double>::infinity();
  Complex B;
  double b;
  if (p_.sigma > 0.0) {
    B = Complex(0.5 * p_.sigma * p_.sigma, 0.0);
    b = 2.0;
  } else if (std::max(ap, an) > 1.0) {
    b = std::max(ap, an);
    if (ap > an) {
      B = -p_.c_pos * std::exp(Complex(0.0, -kPi * ap)) * gamma_fn(1.0 - ap);
    } else if (an > ap) {
      B = Complex(-p_.c_neg * gamma_fn(1.0 - an), 0.0);
    } else {
      B = -(p_.c_pos * std::exp(Complex(0.0, -kPi * ap)) + p_.c_neg) * gamma_fn(1.0 - ap);
    }
  } else if (p_.mu != 0.0) {
    // bounded variation with drift
    B = Complex(p_.mu, 0.0);
    b = 1.0;
  } else if (std::max(ap, an) > 0.0) {
    b = std::max(ap, an);
    if (ap > an) {
      B = -p_.c_pos * std::exp(Complex(0.0, -kPi * ap)) * gamma_fn(1.0 - ap);
    } else if (an > ap) {
      B = Complex(-p_.c_neg * gamma_fn(1.0 - an), 0.0);
    } else {
      B = -(p_.c_pos * std::exp(Complex(0.0, -kPi * ap)) + p_.c_neg) * gamma_fn(1.0 - ap);
    }
  } else {
    throw UnsupportedModelError("kobol profile: drift-free compound Poisson has no b > 0 term");
  }
  return AsymptoticProfile{A, 1.0, B, b, k};
}

bool TruncatedKobolModel::is_compound_poisson() const {
  return p_.sigma == 0.0 && (p_.c_pos == 0.0 || p_.alpha_pos < 0.0) &&
         (p_.c_neg == 0.0 || p_.alpha_neg < 0.0);
}

double TruncatedKobolModel::levy_density(double x) const {
  if (x > 0.0 && x < p_.jump_bound)
    return p_.c_pos * p_.alpha_pos * std::exp(-p_.beta_pos * x) * std::pow(x, -1.0 - p_.alpha_pos);
  if (x < 0.0)
    return p_.c_neg * p_.alpha_neg * std::exp(p_.beta_neg * x) * std::pow(-x, -1.0 - p_.alpha_neg);
  return 0.0;
}

// ---------------------------------------------------------------------------
// SpectrallyNegativeModel

SpectrallyNegativeModel::SpectrallyNegativeModel(const SpectrallyNegativeParams& p) : p_(p) {
  if (p_.sigma < 0.0) throw ModelError("spectrally negative: sigma must be >= 0");
  if (p_.c <= 0.0) throw ModelError("spectrally negative: c must be > 0");
  if (!(p_.alpha < 2.0) || p_.alpha == 1.0 || p_.alpha == 0.0)
    throw ModelError("spectrally negative: alpha must lie in (-inf,1) or (1,2)");
  if (p_.beta <= 0.0) throw ModelError("spectrally negative: beta must be > 0");
  if (p_.jump_bound <= 0.0) throw ModelError("spectrally negative: jump bound k must be > 0");
  if (p_.sigma == 0.0 && p_.alpha < 1.0 && p_.mu <= 0.0)
    throw ModelError("spectrally negative: sigma = 0 and alpha < 1 require mu > 0");

  const double a = p_.alpha, k = p_.jump_bound;
  eta_ = -p_.c * a * std::pow(k, -a) *
         regularized_lower_gamma(-a, Complex(k * p_.beta, 0.0)).real();
}

Complex SpectrallyNegativeModel::psi(Complex z) const {
  const double a = p_.alpha, k = p_.jump_bound;
  return 0.5 * p_.sigma * p_.sigma * z * z + p_.mu * z +
         p_.c * a * std::pow(k, -a) * regularized_lower_gamma(-a, k * (p_.beta + z)) + eta_;
}

Complex SpectrallyNegativeModel::psi_prime(Complex z) const {
  const double a = p_.alpha, k = p_.jump_bound;
  return p_.sigma * p_.sigma * z + p_.mu -
         p_.c * a * std::pow(k, 1.0 - a) * regularized_lower_gamma(1.0 - a, k * (p_.beta + z));
}

VariationClass SpectrallyNegativeModel::variation_class() const {
  return (p_.sigma > 0.0 || p_.alpha > 1.0) ? VariationClass::unbounded_variation
                                            : VariationClass::bounded_variation;
}

TruncatedKobolModel SpectrallyNegativeModel::dual() const {
  KobolParams d;
  d.sigma = p_.sigma;
  d.mu = -p_.mu;
  d.c_pos = p_.c;
  d.c_neg = 0.0;
  d.alpha_pos = p_.alpha;
  d.alpha_neg = 0.5;  // unused, c_neg = 0
  d.beta_pos = p_.beta;
  d.beta_neg = 1.0;   // unused
  d.jump_bound = p_.jump_bound;
  return TruncatedKobolModel(d);
}

// ---------------------------------------------------------------------------
// LatticeCompoundPoissonModel

LatticeCompoundPoissonModel::LatticeCompoundPoissonModel(const LatticeParams& p) : p_(p) {
  if (p_.spacing <= 0.0) throw ModelError("lattice: spacing h must be > 0");
  if (p_.sigma < 0.0) throw ModelError("lattice: sigma must be >= 0");
  if (p_.masses.empty()) throw ModelError("lattice: at least one atom required");
  top_j_ = 0;
  for (const auto& [j, mass] : p_.masses) {
    if (j == 0) throw ModelError("lattice: atom at zero is not a jump");
    if (mass <= 0.0) throw ModelError("lattice: atom masses must be > 0");
    top_j_ = std::max(top_j_, j);
  }
  if (top_j_ <= 0) throw ModelError("lattice: a positive jump atom is required (bounded positive jumps)");
  k_ = p_.spacing * top_j_;
}

Complex LatticeCompoundPoissonModel::psi(Complex z) const {
  Complex v = 0.5 * p_.sigma * p_.sigma * z * z + p_.drift * z;
  for (const auto& [j, mass] : p_.masses) v += mass * (std::exp(double(j) * p_.spacing * z) - 1.0);
  return v;
}

Complex LatticeCompoundPoissonModel::psi_prime(Complex z) const {
  Complex v = p_.sigma * p_.sigma * z + p_.drift;
  for (const auto& [j, mass] : p_.masses) {
    const double jx = double(j) * p_.spacing;
    v += mass * jx * std::exp(jx * z);
  }
  return v;
}

AsymptoticProfile LatticeCompoundPoissonModel::asymptotic_profile() const {
  // atom at the boundary: n = 0, A = Pi({k})
  const Complex A(p_.masses.at(top_j_), 0.0);
  if (p_.sigma > 0.0) return {A, 0.0, Complex(0.5 * p_.sigma * p_.sigma, 0.0), 2.0, k_};
  if (p_.drift != 0.0) return {A, 0.0, Complex(p_.drift, 0.0), 1.0, k_};
  // Drift-free case: psi - q ~ A e^{kz} - (P + q) with P the total mass.
  // The seed formula stays exact with b = 0 when there is a single positive
  // atom; with several positive atoms the large roots split across several
  // vertical lines and no single profile describes them.
  int positive_atoms = 0;
  double total_mass = 0.0;
  for (const auto& [j, mass] : p_.masses) {
    if (j > 0) ++positive_atoms;
    total_mass += mass;
  }
  if (positive_atoms > 1)
    throw UnsupportedModelError(
        "lattice profile: drift-free multi-atom lattice has no single-line root asymptotics");
  return {A, 0.0, Complex(-total_mass, 0.0), 0.0, k_};
}

std::vector<std::pair<double, double>> LatticeCompoundPoissonModel::jump_atoms() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(p_.masses.size());
  for (const auto& [j, mass] : p_.masses) out.emplace_back(double(j) * p_.spacing, mass);
  return out;
}

}  // namespace levywh
