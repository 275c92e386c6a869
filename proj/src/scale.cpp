#include "levywh/scale.hpp"

#include <cmath>
#include <functional>

namespace levywh::scale {

namespace {

double solve_phi(const SpectrallyNegativeModel& m, double q) {
  const double cap = 700.0 / m.jump_bound() + 100.0;
  auto f = [&](double x) { return m.psi(Complex(x, 0.0)).real(); };
  auto fp = [&](double x) { return m.psi_prime(Complex(x, 0.0)).real(); };
  if (q > 0.0) return roots::detail::find_positive_root_increasing(f, fp, q, cap);
  // q = 0: psi_Y(0) = 0 is the trivial root; Phi(0) > 0 exists iff
  // psi_Y'(0) < 0. Bracket from a point where psi_Y is still negative.
  if (!(fp(0.0) < 0.0))
    throw UnsupportedModelError("build_scale_context: q = 0 requires Phi(0) > 0, i.e. psi_Y'(0) < 0");
  double a = 1e-3;
  while (f(a) >= 0.0 && a > 1e-12) a *= 0.5;
  double b = a;
  int guard = 0;
  while (f(b) <= 0.0) {
    b *= 2.0;
    if (b > cap || ++guard > 200) throw ModelError("build_scale_context: Phi(0) bracket not found");
  }
  double lo = a, hi = b;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// adaptive Simpson with absolute tolerance
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 28);
}

}  // namespace

ScaleContext build_scale_context(const SpectrallyNegativeModel& model, double q, int n_terms,
                                 const roots::RootSearchConfig& cfg) {
  if (q < 0.0) throw DomainError("build_scale_context: q must be >= 0");
  if (n_terms < 1) throw DomainError("build_scale_context: n_terms must be >= 1");

  ScaleContext ctx{model, q, 0.0, {}, 0.0, 0.0, {}, 0, 1e-4};
  ctx.n_terms = n_terms;
  ctx.phi_q = solve_phi(model, q);

  roots::RootSearchConfig rcfg = cfg;
  const TruncatedKobolModel dual = model.dual();
  if (q == 0.0) rcfg.zeta0_override = 0.0;  // dual real root degenerates to the origin
  ctx.dual_roots = roots::assemble_roots(dual, q, n_terms, rcfg);

  const auto rep = roots::verify_simple(dual, ctx.dual_roots);
  if (!rep.flagged.empty())
    throw DegenerateRootError("build_scale_context: near-multiple dual root, series coefficients invalid");

  ctx.lead_coeff = 1.0 / model.psi_prime(Complex(ctx.phi_q, 0.0)).real();
  ctx.zeta0_coeff = 1.0 / model.psi_prime(Complex(-ctx.dual_roots.zeta0, 0.0)).real();
  ctx.pair_coeffs.resize(n_terms);
  for (int n = 0; n < n_terms; ++n)
    ctx.pair_coeffs[n] = 1.0 / model.psi_prime(-ctx.dual_roots.zetas[n]);
  return ctx;
}

ScaleValue scale_function_with_estimate(const ScaleContext& ctx, double x) {
  ScaleValue out;
  if (x <= 0.0) return out;  // W^(q)(x) = 0 for x < 0 by definition
  if (x < ctx.x_min)
    throw DomainError("scale_function: x below the evaluation floor (uniform convergence holds on [eps,inf))");
  double acc = std::exp(ctx.phi_q * x) * ctx.lead_coeff +
               std::exp(-ctx.dual_roots.zeta0 * x) * ctx.zeta0_coeff;
  double last = 0.0;
  for (int n = 0; n < ctx.n_terms; ++n) {
    const Complex term = ctx.pair_coeffs[n] * std::exp(-ctx.dual_roots.zetas[n] * x);
    acc += 2.0 * term.real();
    last = 2.0 * std::abs(term);
  }
  out.value = acc;
  out.trunc_estimate = last;
  return out;
}

double scale_function(const ScaleContext& ctx, double x) {
  return scale_function_with_estimate(ctx, x).value;
}

std::pair<double, double> scale_laplace_check(const ScaleContext& ctx, double z, double upper) {
  if (!(z > ctx.phi_q))
    throw DomainError("scale_laplace_check: need z > Phi(q), the transform diverges otherwise");
  // integrate from below the default floor; the missing [0, x_lo] strip is
  // bounded by x_lo * sup W near 0
  ScaleContext loose = ctx;
  loose.x_min = 1e-6;
  const double x_lo = 1e-5;
  auto f = [&](double x) { return std::exp(-z * x) * scale_function(loose, x); };
  const double analytic = 1.0 / (ctx.model.psi(Complex(z, 0.0)).real() - ctx.q);
  // split: geometric panels near zero, adaptive Simpson elsewhere
  double total = 0.0;
  double a = x_lo;
  const double tol = 1e-9 * std::max(1.0, std::abs(analytic));
  for (double b : {1e-4, 1e-3, 1e-2, 0.1}) {
    total += integrate(f, a, b, tol * (b - a) / upper);
    a = b;
  }
  total += integrate(f, a, upper, tol);
  return {total, analytic};
}

}  // namespace levywh::scale
