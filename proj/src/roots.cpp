#include "levywh/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace levywh::roots {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// 10-point Gauss-Legendre on [-1, 1].
constexpr double kGlNode[5] = {0.14887433898163121, 0.43339539412924719, 0.67940956829902441,
                               0.86506336668898451, 0.97390652851717172};
constexpr double kGlWeight[5] = {0.29552422471475287, 0.26926671930999636, 0.21908636251598204,
                                 0.14945134915058059, 0.066671344308688138};

struct Eval {
  const LevyModel& model;
  double q;

  Complex f(Complex z) const { return model.psi(z) - q; }
  Complex fprime(Complex z) const { return model.psi_prime(z); }
};

struct NewtonResult {
  Complex z{};
  bool converged = false;
  double residual = std::numeric_limits<double>::infinity();
  int iters = 0;
};

// Acceptance threshold for a polished root. Positions are exact to about an
// ulp, but |psi(z) - q| at the nearest representable z floors at
// |psi'| * ulp(|z|), which outgrows any flat tolerance once |psi'| is large
// (|psi'(zeta_n)| ~ k |B| (2 pi n / k)^b along the root ladder).
double residual_threshold(double q, double abs_fprime, double abs_z, double polish_tol) {
  constexpr double kEps = 2.220446049250313e-16;
  return polish_tol * (1.0 + std::abs(q)) + 8.0 * kEps * abs_fprime * (1.0 + abs_z);
}

NewtonResult newton_polish(const Eval& ev, Complex z0, const RootSearchConfig& cfg) {
  NewtonResult out;
  Complex z = z0;
  Complex f;
  try {
    f = ev.f(z);
  } catch (const DomainError&) {
    return out;
  }
  if (!std::isfinite(std::abs(f))) return out;
  double afp = 0.0;
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    out.iters = it + 1;
    Complex fp;
    try {
      fp = ev.fprime(z);
    } catch (const DomainError&) {
      return out;
    }
    afp = std::abs(fp);
    if (!(afp > 0.0) || !std::isfinite(afp)) return out;
    const Complex dz = f / fp;
    double scale = 1.0;
    Complex zn, fn;
    bool improved = false;
    for (int h = 0; h < 9; ++h) {
      zn = z - scale * dz;
      bool ok = true;
      try {
        fn = ev.f(zn);
      } catch (const DomainError&) {
        ok = false;
      }
      if (ok && std::isfinite(std::abs(fn)) && std::abs(fn) <= std::abs(f)) {
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) break;
    z = zn;
    f = fn;
    if (std::abs(scale * dz) <= cfg.newton_tol * (1.0 + std::abs(z))) break;
  }
  out.z = z;
  out.residual = std::abs(f);
  out.converged = out.residual <= residual_threshold(ev.q, afp, std::abs(z), cfg.polish_tol);
  return out;
}

// Change of argument of psi - q along the segment [za, zb]: adaptive panel
// bisection until the endpoint phase step is below pi/2 and agrees with the
// 10-point Gauss-Legendre quadrature of psi'/(psi - q); the panel then
// contributes its principal phase step, so the edge total telescopes exactly.
class EdgeArg {
 public:
  EdgeArg(const Eval& ev, double boundary_abs_tol) : ev_(ev), btol_(boundary_abs_tol) {}

  double run(Complex za, Complex zb) {
    return piece(za, guarded_f(za), zb, guarded_f(zb), 0);
  }

 private:
  Complex guarded_f(Complex z) const {
    const Complex f = ev_.f(z);
    const double af = std::abs(f);
    if (!std::isfinite(af)) throw PrecisionError("winding: psi overflow on contour");
    if (af < btol_) throw BoundaryRootError("winding: root within working distance of the contour");
    return f;
  }

  double quad_im(Complex za, Complex zb) const {
    const Complex half = 0.5 * (zb - za);
    const Complex mid = 0.5 * (za + zb);
    Complex acc(0.0, 0.0);
    for (int i = 0; i < 5; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const Complex z = mid + sgn * kGlNode[i] * half;
        const Complex f = guarded_f(z);
        acc += kGlWeight[i] * ev_.fprime(z) / f;
      }
    }
    return (acc * half).imag();
  }

  double piece(Complex za, Complex fa, Complex zb, Complex fb, int depth) {
    if (depth > 26) throw PrecisionError("winding: panel refinement exhausted");
    const double dphi = std::arg(fb / fa);
    if (depth >= 1 && std::abs(dphi) <= 0.5 * kPi) {
      const double qim = quad_im(za, zb);
      if (std::abs(qim - dphi) <= 0.02) return dphi;
    }
    const Complex zm = 0.5 * (za + zb);
    const Complex fm = guarded_f(zm);
    return piece(za, fa, zm, fm, depth + 1) + piece(zm, fm, zb, fb, depth + 1);
  }

  const Eval& ev_;
  double btol_;
};

int winding_count_impl(const Eval& ev, const Rectangle& rect, double boundary_tol) {
  rect.validate();
  if (rect.lo.real() < -1e-12)
    throw DomainError("winding_count: rectangle must lie in the closed right half-plane");
  const Complex a = rect.lo;
  const Complex b(rect.hi.real(), rect.lo.imag());
  const Complex c = rect.hi;
  const Complex d(rect.lo.real(), rect.hi.imag());
  const double btol = boundary_tol * (1.0 + std::abs(ev.q));
  EdgeArg edge(ev, btol);
  const double total = edge.run(a, b) + edge.run(b, c) + edge.run(c, d) + edge.run(d, a);
  const double turns = total / kTwoPi;
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 0.25)
    throw PrecisionError("winding_count: non-integer winding after refinement");
  return int(nearest);
}

Rectangle shifted(const Rectangle& r, double amount) {
  const Complex delta = amount * r.diameter() * Complex(1.0, 1.0);
  return Rectangle{r.lo + delta, r.hi + delta};
}

class Subdivider {
 public:
  Subdivider(const Eval& ev, const RootSearchConfig& cfg) : ev_(ev), cfg_(cfg) {}

  std::vector<Complex> run(Rectangle rect) {
    rect.validate();
    // perturb the whole rectangle while a root rides its boundary
    int total = 0;
    bool counted = false;
    for (int attempt = 0; attempt <= 5; ++attempt) {
      try {
        total = winding_count_impl(ev_, rect, cfg_.boundary_tol);
        counted = true;
        break;
      } catch (const BoundaryRootError&) {
        rect = shifted(rect, 1e-4);
      }
    }
    if (!counted) throw BoundaryRootError("subdivision_search: persistent boundary root");
    out_.clear();
    recurse(rect, total, 0);
    if (int(out_.size()) != total)
      throw PrecisionError("subdivision_search: found root count disagrees with winding total");
    return out_;
  }

 private:
  void recurse(const Rectangle& rect, int n, int depth) {
    if (n == 0) return;
    if (n == 1) {
      NewtonResult nr = newton_polish(ev_, rect.center(), cfg_);
      if (nr.converged && rect.contains(nr.z, 1e-7 * rect.diameter())) {
        out_.push_back(nr.z);
        return;
      }
      // Newton diverged or left the cell: keep splitting
    }
    if (depth >= cfg_.max_depth)
      throw MultipleRootError("subdivision_search: suspected multiple root near cell center " +
                              std::to_string(rect.center().real()) + "+" +
                              std::to_string(rect.center().imag()) + "i");
    // split through the center, re-cutting with a jittered center whenever a
    // root lands on an internal edge (keeps the four cells a partition)
    for (int attempt = 0; attempt <= 5; ++attempt) {
      const Complex c = rect.center() + double(attempt) * 1e-4 * rect.diameter() * Complex(1.0, 1.0);
      if (!rect.contains(c)) break;
      Rectangle cells[4] = {
          Rectangle{rect.lo, c},
          Rectangle{Complex(c.real(), rect.lo.imag()), Complex(rect.hi.real(), c.imag())},
          Rectangle{Complex(rect.lo.real(), c.imag()), Complex(c.real(), rect.hi.imag())},
          Rectangle{c, rect.hi},
      };
      int counts[4];
      int sum = 0;
      bool ok = true;
      try {
        for (int i = 0; i < 4; ++i) {
          counts[i] = winding_count_impl(ev_, cells[i], cfg_.boundary_tol);
          sum += counts[i];
        }
      } catch (const BoundaryRootError&) {
        ok = false;
      }
      if (ok && sum != n) ok = false;  // a root slipped through an edge
      if (!ok) continue;
      for (int i = 0; i < 4; ++i) recurse(cells[i], counts[i], depth + 1);
      return;
    }
    throw PrecisionError("subdivision_search: could not place an interior cut clear of roots");
  }

  const Eval& ev_;
  const RootSearchConfig& cfg_;
  std::vector<Complex> out_;
};

void sort_by_modulus(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return a.imag() < b.imag();
  });
}

}  // namespace

namespace detail {

double find_positive_root_increasing(const std::function<double(double)>& f,
                                     const std::function<double(double)>& fprime, double target,
                                     double bracket_cap) {
  // f(0) < target, f convex with a single upcrossing of `target` on (0, inf)
  double b = 1.0;
  int guard = 0;
  while (true) {
    double fb = f(b);
    if (std::isfinite(fb) && fb <= target) {
      b *= 2.0;
      if (b > bracket_cap || ++guard > 200)
        throw ModelError("root bracket: Laplace exponent does not reach the target level");
      continue;
    }
    break;  // fb > target, or inf (still a valid upper bracket)
  }
  double lo = 0.0, hi = b;
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::isfinite(fm) && fm <= target)
      lo = mid;
    else
      hi = mid;
  }
  // damped Newton from the bracket midpoint
  double x = 0.5 * (lo + hi);
  double fx = f(x) - target;
  for (int it = 0; it < 100; ++it) {
    const double fp = fprime(x);
    if (!(std::abs(fp) > 0.0) || !std::isfinite(fp)) break;
    double step = fx / fp;
    double scale = 1.0;
    double xn = x, fn = fx;
    for (int h = 0; h < 40; ++h) {
      xn = x - scale * step;
      fn = f(xn) - target;
      if (std::isfinite(fn) && std::abs(fn) <= std::abs(fx)) break;
      scale *= 0.5;
    }
    x = xn;
    fx = fn;
    if (std::abs(scale * step) <= 1e-15 * (1.0 + std::abs(x))) break;
    if (std::abs(fx) <= 1e-13 * (1.0 + std::abs(target))) break;
  }
  if (std::abs(fx) > 1e-12 * (1.0 + std::abs(target)))
    throw PrecisionError("root polish: residual above tolerance");
  return x;
}

}  // namespace detail

double find_zeta0(const LevyModel& model, double q) {
  if (!(q > 0.0)) throw DomainError("find_zeta0: q must be > 0");
  const double cap = 700.0 / model.jump_bound() + 100.0;
  auto f = [&](double x) { return model.psi(Complex(x, 0.0)).real(); };
  auto fp = [&](double x) { return model.psi_prime(Complex(x, 0.0)).real(); };
  return detail::find_positive_root_increasing(f, fp, q, cap);
}

int winding_count(const LevyModel& model, double q, const Rectangle& rect) {
  Eval ev{model, q};
  RootSearchConfig cfg;
  return winding_count_impl(ev, rect, cfg.boundary_tol);
}

std::vector<Complex> subdivision_search(const LevyModel& model, double q, Rectangle rect,
                                        const RootSearchConfig& cfg) {
  Eval ev{model, q};
  Subdivider sub(ev, cfg);
  auto out = sub.run(rect);
  sort_by_modulus(out);
  return out;
}

Complex asymptotic_seed(const AsymptoticProfile& profile, long n) {
  if (n < 1) throw DomainError("asymptotic_seed: n must be >= 1");
  const double k = profile.jump_bound;
  const double ab = profile.exp_power + profile.poly_power;
  const Complex ratio = profile.poly_coeff / profile.exp_coeff;
  const double re = (std::log(std::abs(ratio)) + ab * std::log(kTwoPi * double(n) / k)) / k;
  const double im = (std::arg(ratio) + (0.5 * ab + 2.0 * double(n) + 1.0) * kPi) / k;
  return {re, im};
}

Complex asymptotic_seed_q(const AsymptoticProfile& profile, long n, double q) {
  if (profile.poly_power == 0.0) {
    AsymptoticProfile p = profile;
    p.poly_coeff -= q;  // the constant companion term never dominates q
    return asymptotic_seed(p, n);
  }
  return asymptotic_seed(profile, n);
}

RootSet assemble_roots(const LevyModel& model, double q, int count, const RootSearchConfig& cfg) {
  if (count < 1) throw DomainError("assemble_roots: count must be >= 1");
  if (!(q > 0.0) && !cfg.zeta0_override)
    throw DomainError("assemble_roots: q must be > 0");
  const AsymptoticProfile prof = model.asymptotic_profile();
  const double k = model.jump_bound();
  Eval ev{model, q};

  RootSet rs;
  rs.q = q;
  rs.jump_bound = k;
  rs.zeta0 = cfg.zeta0_override ? *cfg.zeta0_override : find_zeta0(model, q);

  auto seed = [&](long n) { return asymptotic_seed_q(prof, n, q); };

  // Boxed-search ceiling: between the strips of seeds box_seed_index-1 and
  // box_seed_index, so no expected root rides the box edge.
  const double h_top = seed(cfg.box_seed_index).imag() - kPi / k;
  double re_seed_max = 0.0;
  for (long n = 1; n <= cfg.box_seed_index; ++n)
    re_seed_max = std::max(re_seed_max, seed(n).real());
  const double re_max = std::max(2.0 * rs.zeta0 + 2.0 / k + 1.0, re_seed_max + 8.0 / k);

  const double fp0 = std::abs(model.psi_prime(Complex(rs.zeta0, 0.0)));
  const double im_lo =
      std::max(1e-3 * kTwoPi / k,
               std::min(0.3 * kTwoPi / k, 10.0 * cfg.boundary_tol * (1.0 + q) / std::max(fp0, 1e-8)));

  std::vector<Complex> found =
      subdivision_search(model, q, Rectangle{Complex(0.0, im_lo), Complex(re_max, h_top)}, cfg);
  const std::size_t box_count = found.size();

  // Offset m: minimum mean displacement of the top half of the boxed roots
  // against the seed ladder.
  long m_off = 0;
  if (box_count > 0) {
    double best = std::numeric_limits<double>::infinity();
    for (long mm = -4; mm <= 4; ++mm) {
      double cost = 0.0;
      int cnt = 0;
      for (std::size_t j = box_count / 2 + 1; j <= box_count; ++j) {
        const long nidx = long(j) - mm;
        if (nidx < 1) continue;
        cost += std::abs(found[j - 1] - seed(nidx));
        ++cnt;
      }
      if (cnt > 0 && cost / cnt < best) {
        best = cost / cnt;
        m_off = mm;
      }
    }
  }
  rs.seed_offset = m_off;

  // Seeded Newton above the box, topping up after dedup as needed.
  long idx = long(box_count) + 1;
  long attempts = 0;
  const long attempt_cap = 3 * long(count) + 200;
  while (true) {
    while (int(found.size()) < count) {
      if (++attempts > attempt_cap)
        throw EnumerationError("assemble_roots: seed continuation failed to reach the requested count");
      const long nidx = idx - m_off;
      ++idx;
      if (nidx < 1) continue;
      const Complex s = seed(nidx);
      if (s.imag() <= h_top) continue;  // boxed regime
      NewtonResult nr = newton_polish(ev, s, cfg);
      const bool ok = nr.converged && nr.z.imag() > 0.0 && nr.z.real() > 0.0 &&
                      std::abs(nr.z - s) < kTwoPi / k;
      if (ok) {
        found.push_back(nr.z);
        continue;
      }
      // re-seed from a boxed search of the strip around the seed
      Rectangle strip{Complex(0.0, s.imag() - kPi / k),
                      Complex(s.real() + 8.0 / k, s.imag() + kPi / k)};
      auto got = subdivision_search(model, q, strip, cfg);
      if (got.size() != 1)
        throw EnumerationError("assemble_roots: strip at seed index " + std::to_string(nidx) +
                               " holds " + std::to_string(got.size()) + " roots, expected 1");
      found.push_back(got[0]);
    }
    sort_by_modulus(found);
    std::vector<Complex> dedup;
    for (const Complex& z : found) {
      if (!dedup.empty() && std::abs(z - dedup.back()) < cfg.dedup_dist) continue;
      dedup.push_back(z);
    }
    found = std::move(dedup);
    if (int(found.size()) >= count) break;
  }
  found.resize(count);

  // Sampled strip verification in the Newton regime, strips centered on the
  // assembled roots.
  std::vector<std::size_t> samples;
  if (box_count < found.size()) {
    const std::size_t first = box_count;  // first Newton-regime index (0-based)
    const std::size_t last = found.size() - 1;
    samples.push_back(first);
    if (first + 1 <= last) samples.push_back(first + 1);
    samples.push_back(last);
    double g = double(last - first);
    for (int s = 1; s < cfg.strip_samples - 3 && g > 4; ++s) {
      samples.push_back(first + std::size_t(g * double(s) / double(cfg.strip_samples - 2)));
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  }
  for (std::size_t i : samples) {
    const Complex r = found[i];
    Rectangle strip{Complex(0.0, r.imag() - kPi / k), Complex(r.real() + 6.0 / k, r.imag() + kPi / k)};
    int n = -1;
    for (int attempt = 0; attempt <= 5; ++attempt) {
      try {
        n = winding_count_impl(ev, strip, cfg.boundary_tol);
        break;
      } catch (const BoundaryRootError&) {
        strip = shifted(strip, 1e-4);
      }
    }
    if (n != 1)
      throw EnumerationError("assemble_roots: verification strip around root " + std::to_string(i + 1) +
                             " holds " + std::to_string(n) + " roots, expected 1");
  }

  // Invariants and diagnostics.
  rs.zetas = std::move(found);
  rs.residual_sup = 0.0;
  rs.min_prime = std::abs(model.psi_prime(Complex(rs.zeta0, 0.0)));
  for (const Complex& z : rs.zetas) {
    if (!(z.imag() > 0.0) || !(z.real() > 0.0))
      throw EnumerationError("assemble_roots: stored root outside the open first quadrant");
    if (z.real() < rs.zeta0 - 1e-9)
      throw EnumerationError("assemble_roots: root with Re below zeta_0");
    rs.residual_sup = std::max(rs.residual_sup, std::abs(ev.f(z)));
    rs.min_prime = std::min(rs.min_prime, std::abs(model.psi_prime(z)));
  }
  return rs;
}

SimplicityReport verify_simple(const LevyModel& model, const RootSet& rs, double floor) {
  SimplicityReport rep;
  rep.min_abs_prime = std::abs(model.psi_prime(Complex(rs.zeta0, 0.0)));
  for (std::size_t i = 0; i < rs.zetas.size(); ++i) {
    const double ap = std::abs(model.psi_prime(rs.zetas[i]));
    rep.min_abs_prime = std::min(rep.min_abs_prime, ap);
    if (ap < floor) rep.flagged.push_back(i);
  }
  return rep;
}

}  // namespace levywh::roots
