#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "levywh/models.hpp"

namespace levywh::roots {

using levywh::Complex;

// Axis-aligned search rectangle, lower-left/upper-right corners.
struct Rectangle {
  Complex lo;
  Complex hi;

  void validate() const {
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
      throw DomainError("Rectangle: need Re(lo) < Re(hi) and Im(lo) < Im(hi)");
  }
  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  double diameter() const { return std::abs(hi - lo); }
  Complex center() const { return 0.5 * (lo + hi); }
  bool contains(Complex z, double margin = 0.0) const {
    return z.real() >= lo.real() - margin && z.real() <= hi.real() + margin &&
           z.imag() >= lo.imag() - margin && z.imag() <= hi.imag() + margin;
  }
};

struct RootSearchConfig {
  int max_depth = 40;            // subdivision recursion limit
  double newton_tol = 1e-13;     // |dz| <= newton_tol * (1 + |z|)
  int newton_max_iter = 50;
  double polish_tol = 1e-11;     // |psi - q| <= polish_tol * (1 + q)
  double boundary_tol = 1e-6;    // boundary proximity: |psi - q| < boundary_tol * (1 + q)
  double dedup_dist = 1e-8;
  int box_seed_index = 20;       // boxed search covers Im up to seed(box_seed_index) - pi/k
  int strip_samples = 12;        // strips verified by winding in the Newton regime
  // zeta_0 supplied by the caller instead of solved for; used by the scale
  // module for q = 0, where the real root of the dual equation sits at 0.
  std::optional<double> zeta0_override;
};

// zeta_0 and the first-quadrant roots of psi(z) = q, upper representatives
// only (the conjugates are implied), ordered by increasing absolute value.
struct RootSet {
  double q = 0.0;
  double zeta0 = 0.0;
  std::vector<Complex> zetas;
  double residual_sup = 0.0;  // max |psi(zeta) - q| over stored roots
  // max over roots of |psi(zeta) - q| relative to the double-precision floor
  // 1e-9 (1+q) + 8 eps |psi'(zeta)| (1+|zeta|); roots are position-exact, the
  // raw residual at large n is dominated by |psi'| * ulp(|zeta|)
  double residual_scaled_sup = 0.0;
  double min_prime = 0.0;     // min |psi'(zeta)|, simplicity diagnostic
  long seed_offset = 0;       // m in zeta_{n+m} ~ seed(n)
  double jump_bound = 0.0;    // k, carried for the Wiener-Hopf product
};

/// The unique positive solution of psi(z) = q, q > 0. Bracket expansion,
/// bisection to width 1e-3, then damped Newton.
double find_zeta0(const LevyModel& model, double q);

/// Number of roots of psi(z) - q inside rect (argument principle, adaptive
/// panels along the four edges). Throws BoundaryRootError when a root sits
/// within working distance of the contour.
int winding_count(const LevyModel& model, double q, const Rectangle& rect);

/// All roots of psi(z) = q inside rect, polished to
/// |psi(zeta) - q| <= polish_tol * (1 + q). Count -> stop/Newton/split loop.
std::vector<Complex> subdivision_search(const LevyModel& model, double q, Rectangle rect,
                                        const RootSearchConfig& cfg = {});

/// Large-root seed from the asymptotic profile, n >= 1.
Complex asymptotic_seed(const AsymptoticProfile& profile, long n);

/// For the profile of psi - q: poly_power == 0 needs poly_coeff - q.
Complex asymptotic_seed_q(const AsymptoticProfile& profile, long n, double q);

/// Assemble zeta_0 plus the first `count` first-quadrant roots: boxed
/// subdivision below the seed-reliability ceiling, seeded Newton above it,
/// offset matching, sampled per-strip winding verification.
RootSet assemble_roots(const LevyModel& model, double q, int count,
                       const RootSearchConfig& cfg = {});

struct SimplicityReport {
  double min_abs_prime = 0.0;
  std::vector<std::size_t> flagged;  // indices with |psi'(zeta)| < floor
};

/// Report-only simplicity diagnostic over all stored roots (zeta_0 included).
SimplicityReport verify_simple(const LevyModel& model, const RootSet& rs, double floor = 1e-6);

namespace detail {
struct NewtonCallbacks;
// Root refinement for a general analytic f; shared with the scale module.
double find_positive_root_increasing(const std::function<double(double)>& f,
                                     const std::function<double(double)>& fprime, double target,
                                     double bracket_cap);
}  // namespace detail

}  // namespace levywh::roots
