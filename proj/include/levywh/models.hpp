#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "levywh/errors.hpp"
#include "levywh/specfun.hpp"

namespace levywh {

using Complex = std::complex<double>;

enum class VariationClass { bounded_variation, unbounded_variation };

// Coefficients of psi(z) ~ A e^{kz} z^{-a} + B z^{b} in the first quadrant.
// poly_power == 0 marks the degenerate constant-term case of drift-free
// single-atom lattices, where the companion of the exponential term is the
// constant poly_coeff (and the root seeds must use poly_coeff - q).
struct AsymptoticProfile {
  Complex exp_coeff;   // A
  double exp_power;    // a
  Complex poly_coeff;  // B
  double poly_power;   // b
  double jump_bound;   // k
};

// A Levy process with bounded positive jumps, seen through its Laplace
// exponent. Implementations are immutable after construction and all
// evaluations are pure; eta is fixed once so that psi(0) = 0 exactly.
class LevyModel {
 public:
  virtual ~LevyModel() = default;

  virtual Complex psi(Complex z) const = 0;
  virtual Complex psi_prime(Complex z) const = 0;

  /// Right endpoint k of the support of the Levy measure.
  virtual double jump_bound() const = 0;
  /// Growth profile (A, a, B, b); throws UnsupportedModelError when the
  /// model has none (drift-free compound Poisson, no positive jump mass).
  virtual AsymptoticProfile asymptotic_profile() const = 0;
  virtual VariationClass variation_class() const = 0;

  // Structural metadata used by the Monte Carlo oracle and the
  // supremum-density atom check.
  virtual double gaussian_coeff() const = 0;
  virtual double drift() const = 0;
  virtual bool is_compound_poisson() const = 0;
  /// True when the Levy measure has a density (tempered-stable families).
  virtual bool has_jump_density() const = 0;
  /// Density of the Levy measure at x (0 outside the support); only valid
  /// when has_jump_density().
  virtual double levy_density(double x) const = 0;
  /// Atom list (size, rate) for lattice models; empty otherwise.
  virtual std::vector<std::pair<double, double>> jump_atoms() const { return {}; }
};

struct KobolParams {
  double sigma = 0.0;      // Gaussian coefficient
  double mu = 0.0;         // drift (cutoff convention of the family)
  double c_pos = 0.0;      // C
  double c_neg = 0.0;      // C-hat
  double alpha_pos = 0.5;  // alpha
  double alpha_neg = 0.5;  // alpha-hat
  double beta_pos = 1.0;   // beta
  double beta_neg = 1.0;   // beta-hat
  double jump_bound = 1.0; // truncation level k
};

// Generalized tempered stable (KoBoL) process with the positive-jump tail
// truncated at k. psi(z) = sigma^2 z^2/2 + mu z
//   - c_neg Gamma(1-alpha_neg) (beta_neg + z)^{alpha_neg}
//   + c_pos alpha_pos k^{-alpha_pos} g(-alpha_pos, k (beta_pos - z)) + eta,
// with g the entire regularized lower incomplete gamma.
class TruncatedKobolModel final : public LevyModel {
 public:
  explicit TruncatedKobolModel(const KobolParams& p);

  Complex psi(Complex z) const override;
  Complex psi_prime(Complex z) const override;
  double jump_bound() const override { return p_.jump_bound; }
  AsymptoticProfile asymptotic_profile() const override;
  VariationClass variation_class() const override;
  double gaussian_coeff() const override { return p_.sigma; }
  double drift() const override { return p_.mu; }
  bool is_compound_poisson() const override;
  bool has_jump_density() const override { return true; }
  double levy_density(double x) const override;

  const KobolParams& params() const { return p_; }
  double eta() const { return eta_; }

 private:
  KobolParams p_;
  double eta_;
  double gamma_neg_;  // Gamma(1 - alpha_neg), cached
};

struct SpectrallyNegativeParams {
  double sigma = 0.0;
  double mu = 0.0;
  double c = 1.0;
  double alpha = 0.5;
  double beta = 1.0;
  double jump_bound = 1.0;  // jumps supported on [-k, 0)
};

// Spectrally negative process with bounded jumps. psi_Y is entire:
// psi_Y(z) = sigma^2 z^2/2 + mu z + c a k^{-a} g(-a, k (beta + z)) + eta.
class SpectrallyNegativeModel {
 public:
  explicit SpectrallyNegativeModel(const SpectrallyNegativeParams& p);

  Complex psi(Complex z) const;
  Complex psi_prime(Complex z) const;
  double jump_bound() const { return p_.jump_bound; }
  VariationClass variation_class() const;
  const SpectrallyNegativeParams& params() const { return p_; }

  /// The dual process -Y: a bounded-positive-jumps model with
  /// psi_dual(z) = psi(-z) exactly (term by term).
  TruncatedKobolModel dual() const;

 private:
  SpectrallyNegativeParams p_;
  double eta_;
};

struct LatticeParams {
  double spacing = 1.0;           // h
  std::map<int, double> masses;   // j -> Pi({j h}), j != 0
  double drift = 0.0;
  double sigma = 0.0;
};

// Compound Poisson process on a lattice h*Z, optionally with drift and a
// Gaussian part. psi(z) = sigma^2 z^2/2 + drift z + sum_j p_j (e^{j h z} - 1).
class LatticeCompoundPoissonModel final : public LevyModel {
 public:
  explicit LatticeCompoundPoissonModel(const LatticeParams& p);

  Complex psi(Complex z) const override;
  Complex psi_prime(Complex z) const override;
  double jump_bound() const override { return k_; }
  AsymptoticProfile asymptotic_profile() const override;
  VariationClass variation_class() const override {
    return p_.sigma > 0.0 ? VariationClass::unbounded_variation : VariationClass::bounded_variation;
  }
  double gaussian_coeff() const override { return p_.sigma; }
  double drift() const override { return p_.drift; }
  bool is_compound_poisson() const override { return p_.sigma == 0.0; }
  bool has_jump_density() const override { return false; }
  double levy_density(double) const override {
    throw UnsupportedModelError("lattice model: Levy measure is atomic");
  }
  std::vector<std::pair<double, double>> jump_atoms() const override;

  const LatticeParams& params() const { return p_; }

 private:
  LatticeParams p_;
  double k_;
  int top_j_;
};

}  // namespace levywh
