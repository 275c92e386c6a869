#include "levywh/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "levywh/rng.hpp"

namespace levywh::oracles {

namespace {

constexpr double kPi = 3.14159265358979323846;
// expected-overshoot constant for a grid-observed Brownian maximum,
// -zeta(1/2)/sqrt(2 pi)
constexpr double kGridMaxCorrection = 0.5825971579390107;

constexpr double kGl5Node[5] = {-0.90617984593866399, -0.53846931010568309, 0.0,
                                0.53846931010568309, 0.90617984593866399};
constexpr double kGl5Weight[5] = {0.23692688505618909, 0.47862867049936647, 0.56888888888888889,
                                  0.47862867049936647, 0.23692688505618909};

// One-sided jump tail on [lo, hi] with lambda, first two moments and a
// 4096-node monotone-cubic quantile table.
class TabulatedTail {
 public:
  static constexpr int kQuantileNodes = 4096;

  TabulatedTail() = default;

  // dens must be positive on (lo, hi); panels laid out geometrically in
  // distance from the singular end (`origin_side` = endpoint nearest 0).
  TabulatedTail(const std::function<double(double)>& dens, double lo, double hi) {
    build(dens, lo, hi);
  }

  double lambda() const { return lambda_; }
  double mean() const { return mean_; }
  double second_moment() const { return second_; }

  double sample(double u) const {
    // u in (0,1); monotone cubic interpolation on the uniform quantile grid
    const double t = u * (kQuantileNodes - 1);
    int i = int(t);
    if (i >= kQuantileNodes - 1) i = kQuantileNodes - 2;
    const double s = t - i;
    const double h = 1.0 / (kQuantileNodes - 1);
    const double x0 = x_[i], x1 = x_[i + 1];
    const double m0 = slope_[i] * h, m1 = slope_[i + 1] * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * x0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * x1 +
           (s3 - s2) * m1;
  }

 private:
  void build(const std::function<double(double)>& dens, double lo, double hi) {
    const int panels = 2048;
    std::vector<double> edge(panels + 1), cum(panels + 1, 0.0);
    const double r = hi / lo;
    for (int j = 0; j <= panels; ++j) edge[j] = lo * std::pow(r, double(j) / panels);
    edge[panels] = hi;
    for (int j = 0; j < panels; ++j) {
      const double a = edge[j], b = edge[j + 1];
      const double hm = 0.5 * (b - a), mid = 0.5 * (a + b);
      double mass = 0.0, m1 = 0.0, m2 = 0.0;
      for (int g = 0; g < 5; ++g) {
        const double x = mid + hm * kGl5Node[g];
        const double w = hm * kGl5Weight[g] * dens(x);
        mass += w;
        m1 += w * x;
        m2 += w * x * x;
      }
      cum[j + 1] = cum[j] + mass;
      mean_ += m1;
      second_ += m2;
    }
    lambda_ = cum[panels];
    if (!(lambda_ > 0.0)) throw ModelError("jump tail has no mass above the cutoff");

    // invert the cumulative onto a uniform quantile grid
    x_.resize(kQuantileNodes);
    int j = 0;
    for (int i = 0; i < kQuantileNodes; ++i) {
      const double target = lambda_ * double(i) / (kQuantileNodes - 1);
      while (j < panels - 1 && cum[j + 1] < target) ++j;
      const double span = cum[j + 1] - cum[j];
      const double frac = span > 0.0 ? (target - cum[j]) / span : 0.0;
      x_[i] = edge[j] + frac * (edge[j + 1] - edge[j]);
    }
    x_.front() = lo;
    x_.back() = hi;

    // Fritsch-Carlson monotone slopes on the uniform grid
    slope_.assign(kQuantileNodes, 0.0);
    const double h = 1.0 / (kQuantileNodes - 1);
    std::vector<double> d(kQuantileNodes - 1);
    for (int i = 0; i + 1 < kQuantileNodes; ++i) d[i] = (x_[i + 1] - x_[i]) / h;
    slope_[0] = d[0];
    slope_[kQuantileNodes - 1] = d[kQuantileNodes - 2];
    for (int i = 1; i + 1 < kQuantileNodes; ++i) {
      if (d[i - 1] * d[i] <= 0.0)
        slope_[i] = 0.0;
      else
        slope_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic mean limiter
    }
  }

  double lambda_ = 0.0;
  double mean_ = 0.0;
  double second_ = 0.0;
  std::vector<double> x_;
  std::vector<double> slope_;
};

// Uniform draws with an optional antithetic reflection.
struct PathRng {
  rng::Xoshiro256pp gen;
  bool reflect;

  PathRng(std::uint64_t seed, std::uint64_t stream, bool reflect_draws)
      : gen(seed, stream), reflect(reflect_draws) {}

  double uniform() {
    const double u = gen.uniform();
    return reflect ? 1.0 - u : u;
  }
  double normal() {
    const double g = gen.normal();
    return reflect ? -g : g;
  }
  double exponential(double rate) { return -std::log(uniform()) / rate; }
  unsigned long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 60.0) {
      const double l = std::exp(-mean);
      unsigned long k = 0;
      double p = uniform();
      while (p > l) {
        ++k;
        p *= uniform();
      }
      return k;
    }
    const unsigned long a = poisson(0.5 * mean);
    return a + poisson(mean - 0.5 * mean);
  }
};

struct JumpSampler {
  // density-backed tails
  bool tabulated = false;
  TabulatedTail pos, neg;
  bool has_neg = false;
  // atomic jumps
  std::vector<std::pair<double, double>> atoms;  // (size, cumulative rate)

  double lambda = 0.0;
  double mean_big = 0.0;
  double second_big = 0.0;

  double sample(PathRng& r) const {
    const double u = r.uniform() * lambda;
    if (tabulated) {
      if (has_neg && u < neg.lambda()) return -neg.sample(u / neg.lambda());
      const double up = has_neg ? u - neg.lambda() : u;
      return pos.sample(std::min(up / pos.lambda(), 1.0));
    }
    for (const auto& [size, cum] : atoms)
      if (u <= cum) return size;
    return atoms.back().first;
  }
};

JumpSampler build_sampler(const LevyModel& model, double eps) {
  JumpSampler s;
  if (model.has_jump_density()) {
    s.tabulated = true;
    auto dens = [&](double x) { return model.levy_density(x); };
    s.pos = TabulatedTail([&](double x) { return dens(x); }, eps, model.jump_bound());
    // negative support: extend until the remaining mass is negligible
    double L = std::max(1.0, 4.0 * eps);
    auto negdens = [&](double t) { return dens(-t); };
    double probe = 0.0;
    for (int it = 0; it < 60; ++it) {
      const double tail_here = negdens(L) * L;
      if (tail_here < 1e-16 * (1.0 + probe)) break;
      probe = std::max(probe, tail_here);
      L *= 2.0;
    }
    if (negdens(eps) > 0.0) {
      s.neg = TabulatedTail(negdens, eps, L);
      s.has_neg = true;
      s.lambda = s.pos.lambda() + s.neg.lambda();
      s.mean_big = s.pos.mean() - s.neg.mean();
      s.second_big = s.pos.second_moment() + s.neg.second_moment();
    } else {
      s.lambda = s.pos.lambda();
      s.mean_big = s.pos.mean();
      s.second_big = s.pos.second_moment();
    }
  } else {
    double cum = 0.0;
    for (const auto& [size, rate] : model.jump_atoms()) {
      if (std::abs(size) <= eps) continue;
      cum += rate;
      s.atoms.emplace_back(size, cum);
      s.mean_big += rate * size;
      s.second_big += rate * size * size;
    }
    s.lambda = cum;
  }
  return s;
}

}  // namespace

std::vector<double> mc_supremum(const LevyModel& model, double q, const McConfig& cfg,
                                int n_threads) {
  if (!(q > 0.0)) throw DomainError("mc_supremum: q must be > 0");
  cfg.validate(model.jump_bound());

  const JumpSampler sampler = build_sampler(model, cfg.jump_cutoff_eps);
  const double sigma0 = model.gaussian_coeff();
  const double mean_total = model.psi_prime(Complex(0.0, 0.0)).real();
  // second derivative by central difference of psi'; keeps the oracle
  // independent of any hand-derived psi''
  const double hfd = 1e-6;
  const double var_total =
      (model.psi_prime(Complex(hfd, 0.0)).real() - model.psi_prime(Complex(-hfd, 0.0)).real()) /
      (2.0 * hfd);

  const double drift_sim = mean_total - sampler.mean_big;
  double sigma_sim = sigma0;
  if (model.variation_class() == VariationClass::unbounded_variation) {
    const double small_var = std::max(0.0, var_total - sigma0 * sigma0 - sampler.second_big);
    sigma_sim = std::sqrt(sigma0 * sigma0 + small_var);
  }
  const double grid_step = std::min(0.01, cfg.jump_cutoff_eps * cfg.jump_cutoff_eps);
  const double max_correction = sigma_sim > 0.0 ? kGridMaxCorrection * sigma_sim * std::sqrt(grid_step) : 0.0;

  std::vector<double> samples(std::size_t(cfg.n_paths));

  auto run_path = [&](long i) {
    const bool reflect = cfg.antithetic && (i % 2 == 1);
    const std::uint64_t stream = cfg.antithetic ? std::uint64_t(i / 2) : std::uint64_t(i);
    PathRng r(cfg.seed, stream, reflect);

    const double horizon = r.exponential(q);
    const unsigned long n_jumps = r.poisson(sampler.lambda * horizon);
    std::vector<double> times(n_jumps);
    for (auto& t : times) t = horizon * r.uniform();
    std::sort(times.begin(), times.end());

    double x = 0.0, running_max = 0.0, t = 0.0;
    auto advance = [&](double dt) {
      if (dt <= 0.0) return;
      if (sigma_sim > 0.0) {
        const long nsteps = std::max(1L, long(std::ceil(dt / grid_step)));
        const double d = dt / double(nsteps);
        const double sd = sigma_sim * std::sqrt(d);
        for (long s = 0; s < nsteps; ++s) {
          x += drift_sim * d + sd * r.normal();
          running_max = std::max(running_max, x);
        }
      } else {
        if (drift_sim > 0.0) {
          x += drift_sim * dt;
          running_max = std::max(running_max, x);
        } else {
          running_max = std::max(running_max, x);
          x += drift_sim * dt;
        }
      }
    };
    for (unsigned long j = 0; j < n_jumps; ++j) {
      advance(times[j] - t);
      t = times[j];
      x += sampler.lambda > 0.0 ? sampler.sample(r) : 0.0;
      running_max = std::max(running_max, x);
    }
    advance(horizon - t);
    samples[std::size_t(i)] = running_max + (running_max > 0.0 ? max_correction : 0.0);
  };

  if (n_threads <= 1) {
    for (long i = 0; i < cfg.n_paths; ++i) run_path(i);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (cfg.n_paths + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      const long lo = w * chunk, hi = std::min(cfg.n_paths, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (long i = lo; i < hi; ++i) run_path(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::sort(samples.begin(), samples.end());
  return samples;
}

double bromwich_scale(const SpectrallyNegativeModel& model, double q, double x, double c,
                      double im_cutoff, long n_nodes, double* tail_estimate, double* half_grid) {
  if (!(x > 0.0)) throw DomainError("bromwich_scale: x must be > 0");
  if (!(c > 0.0) || !(model.psi(Complex(c, 0.0)).real() > q))
    throw DomainError("bromwich_scale: contour abscissa must exceed Phi(q)");
  if (n_nodes < 8) throw DomainError("bromwich_scale: n_nodes too small");

  auto f = [&](double t) {
    const Complex z(c, t);
    return (std::exp(z * x) / (model.psi(z) - q)).real();
  };
  const double h = im_cutoff / double(n_nodes);
  double sum = 0.5 * f(0.0);
  double sum_half = 0.5 * f(0.0);
  for (long j = 1; j < n_nodes; ++j) {
    const double v = f(double(j) * h);
    sum += v;
    if (j % 2 == 0) sum_half += v;
  }
  const double fT = f(im_cutoff);
  sum += 0.5 * fT;
  sum_half += 0.5 * fT;
  if (tail_estimate) {
    const Complex zT(c, im_cutoff);
    *tail_estimate = std::abs(std::exp(zT * x) / (model.psi(zT) - q)) / (kPi * x);
  }
  if (half_grid) *half_grid = sum_half * 2.0 * h / kPi;
  return sum * h / kPi;
}

PoissonReference closed_form_poisson(double q, double k) {
  if (!(q > 0.0) || !(k > 0.0)) throw DomainError("closed_form_poisson: q and k must be > 0");
  return PoissonReference{q, k};
}

}  // namespace levywh::oracles
