// Command-line front end: roots | density | scale | validate pipelines over
// a flat key=value config, emitting plot-ready CSV.

#include <chrono>
#include <thread>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levywh/config.hpp"
#include "levywh/csv.hpp"
#include "levywh/errors.hpp"
#include "levywh/models.hpp"
#include "levywh/oracles.hpp"
#include "levywh/roots.hpp"
#include "levywh/scale.hpp"
#include "levywh/wienerhopf.hpp"

namespace {

using namespace levywh;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidationFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUnsupported = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  long roots_override = -1;
  int threads = 0;
  std::optional<std::uint64_t> seed_override;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

config::RunConfig load_config(const CommonArgs& args) {
  config::RunConfig cfg = config::RunConfig::parse_file(args.config_path);
  if (args.roots_override > 0) cfg.set("n_roots", std::to_string(args.roots_override));
  if (args.seed_override) cfg.set("oracle.seed", std::to_string(*args.seed_override));
  return cfg;
}

int effective_threads(const CommonArgs& args) {
  if (args.threads > 0) return args.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

double require_q(const config::RunConfig& cfg) {
  const double q = cfg.get_double("q");
  if (!(q > 0.0)) throw ConfigError("config: q must be > 0");
  return q;
}

int require_n_roots(const config::RunConfig& cfg) {
  const long n = cfg.get_long("n_roots");
  if (n < 1) throw ConfigError("config: n_roots must be >= 1");
  return int(n);
}

fs::path prepare_out_dir(const CommonArgs& args) {
  fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir)) throw Error("cannot create output directory '" + args.out_dir + "'");
  return dir;
}

// composite Simpson over a uniform inclusive grid; odd interval counts are
// closed with a 3/8 panel
double simpson_mass(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  std::size_t intervals = n - 1;
  double total = 0.0;
  std::size_t limit = intervals;
  if (intervals % 2 != 0) {
    if (intervals < 3) return 0.5 * h * (y[0] + y[1]);
    limit = intervals - 3;
    const std::size_t i = limit;
    total += 3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]);
  }
  for (std::size_t i = 0; i < limit; i += 2)
    total += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  return total;
}

int cmd_roots(const CommonArgs& args) {
  const auto cfg = load_config(args);
  auto built = config::build_model(cfg);
  const double q = require_q(cfg);
  const int n_roots = require_n_roots(cfg);
  const fs::path dir = prepare_out_dir(args);

  const double t0 = now_seconds();
  const auto rs = roots::assemble_roots(*built.levy, q, n_roots);
  const double elapsed = now_seconds() - t0;
  std::cout << "assembled " << rs.zetas.size() << " roots in " << elapsed << " s (zeta0 = " << rs.zeta0
            << ", offset m = " << rs.seed_offset << ")\n";

  const auto prof = built.levy->asymptotic_profile();
  auto seed_at = [&](long n) -> std::optional<Complex> {
    const long idx = n - rs.seed_offset;
    if (idx < 1) return std::nullopt;
    return roots::asymptotic_seed_q(prof, idx, q);
  };

  csv::Writer roots_csv((dir / "roots.csv").string());
  roots_csv.header({"n", "re", "im", "abs_residual", "dist_to_seed"});
  for (std::size_t i = 0; i < rs.zetas.size(); ++i) {
    const Complex z = rs.zetas[i];
    const double resid = std::abs(built.levy->psi(z) - q);
    const auto s = seed_at(long(i) + 1);
    const double dist = s ? std::abs(z - *s) : std::nan("");
    roots_csv.row({double(i + 1), z.real(), z.imag(), resid, dist});
  }
  roots_csv.meta("config_hash", cfg.hash());
  roots_csv.meta("q", q);
  roots_csv.meta("zeta0", rs.zeta0);
  roots_csv.meta("seed_offset", double(rs.seed_offset));
  roots_csv.meta("residual_sup", rs.residual_sup);
  roots_csv.meta("min_abs_psi_prime", rs.min_prime);

  csv::Writer seeds_csv((dir / "seeds.csv").string());
  seeds_csv.header({"n", "re", "im"});
  for (std::size_t i = 0; i < rs.zetas.size(); ++i) {
    const auto s = seed_at(long(i) + 1);
    if (!s) continue;
    seeds_csv.row({double(i + 1), s->real(), s->imag()});
  }
  seeds_csv.meta("config_hash", cfg.hash());
  seeds_csv.meta("seed_offset", double(rs.seed_offset));
  return kExitOk;
}

int cmd_density(const CommonArgs& args) {
  const auto cfg = load_config(args);
  auto built = config::build_model(cfg);
  if (built.family == config::ModelFamily::spectrally_negative)
    throw ConfigError("density: model must have two-sided or positive jumps");
  const double q = require_q(cfg);
  const int n_roots = require_n_roots(cfg);
  const auto grid = config::read_grid(cfg);
  if (!(grid.x_min > 0.0)) throw ConfigError("density: grid.x_min must be > 0 (density defined for x > 0)");
  const fs::path dir = prepare_out_dir(args);

  const double t0 = now_seconds();
  const auto rs = roots::assemble_roots(*built.levy, q, n_roots);
  const auto sd = wienerhopf::compute_residues(*built.levy, rs, n_roots);
  const double t1 = now_seconds();

  csv::Writer out((dir / "density.csv").string());
  out.header({"x", "p", "trunc_est"});
  std::vector<double> values(grid.n_points);
  const double h = (grid.x_max - grid.x_min) / double(grid.n_points - 1);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x_min + h * double(i);
    const auto dv = wienerhopf::supremum_density(sd, x);
    values[i] = dv.value;
    out.row({x, dv.value, dv.trunc_estimate});
  }
  const double mass = simpson_mass(values, h);
  out.meta("config_hash", cfg.hash());
  out.meta("n_root_pairs", double(n_roots));
  out.meta("a0", sd.a0);
  out.meta("mass", mass);
  out.meta("series_total_mass", wienerhopf::series_total_mass(sd));
  std::cout << "density: roots+residues " << (t1 - t0) << " s, " << grid.n_points << " values "
            << (now_seconds() - t1) << " s, grid mass " << mass << "\n";
  return kExitOk;
}

int cmd_scale(const CommonArgs& args) {
  const auto cfg = load_config(args);
  auto built = config::build_model(cfg);
  if (built.family != config::ModelFamily::spectrally_negative)
    throw ConfigError("scale: spectrally negative required");
  const double q = cfg.get_double("q");
  const int n_terms = require_n_roots(cfg);
  const auto grid = config::read_grid(cfg);
  const fs::path dir = prepare_out_dir(args);

  const double t0 = now_seconds();
  auto ctx = scale::build_scale_context(*built.spectrally_negative, q, n_terms);
  ctx.x_min = cfg.get_double_or("scale.x_floor", ctx.x_min);
  const double t1 = now_seconds();
  std::cout << "scale: Phi(q) = " << ctx.phi_q << ", context built in " << (t1 - t0) << " s\n";

  csv::Writer out((dir / "scale.csv").string());
  out.header({"x", "Wq", "trunc_est"});
  const double h = (grid.x_max - grid.x_min) / double(grid.n_points - 1);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x_min + h * double(i);
    const auto wv = scale::scale_function_with_estimate(ctx, x);
    out.row({x, wv.value, wv.trunc_estimate});
  }
  out.meta("config_hash", cfg.hash());
  out.meta("phi_q", ctx.phi_q);
  out.meta("n_terms", double(n_terms));
  std::cout << "scale: " << grid.n_points << " values in " << (now_seconds() - t1) << " s\n";
  return kExitOk;
}

struct CheckResult {
  std::string name;
  double measured;
  double threshold;
  bool pass;
};

int cmd_validate(const CommonArgs& args) {
  const auto cfg = load_config(args);
  auto built = config::build_model(cfg);
  const double q = require_q(cfg);
  const int n_roots = require_n_roots(cfg);
  const fs::path dir = prepare_out_dir(args);
  const int threads = effective_threads(args);

  std::vector<CheckResult> checks;
  auto add = [&](const std::string& name, double measured, double threshold) {
    checks.push_back({name, measured, threshold, measured <= threshold});
  };

  const auto rs = roots::assemble_roots(*built.levy, q, n_roots);
  add("root_residual_sup", rs.residual_sup, 1e-9 * (1.0 + q));

  const auto rep = roots::verify_simple(*built.levy, rs);
  checks.push_back({"min_abs_psi_prime", rep.min_abs_prime, 1e-6, rep.min_abs_prime >= 1e-6});

  // Poisson closed-form suite when the model is a drift-free single-atom lattice
  if (const auto* lat = dynamic_cast<const LatticeCompoundPoissonModel*>(built.levy.get())) {
    const auto& lp = lat->params();
    if (lp.sigma == 0.0 && lp.drift == 0.0 && lp.masses.size() == 1 && lp.masses.begin()->second > 0) {
      // psi(z) = p (e^{kz} - 1) = p psi_poisson(z): roots of psi = q are the
      // Poisson closed forms at level q/p
      const double p_mass = lp.masses.begin()->second;
      const auto ref = oracles::closed_form_poisson(q / p_mass, rs.jump_bound);
      double worst = std::abs(rs.zeta0 - ref.root(0).real());
      const std::size_t upto = std::min<std::size_t>(rs.zetas.size(), 100);
      for (std::size_t n = 0; n < upto; ++n)
        worst = std::max(worst, std::abs(rs.zetas[n] - ref.root(long(n) + 1)));
      add("poisson_root_error", worst, 1e-10);
      if (p_mass == 1.0) {
        const int pairs = int(std::min<std::size_t>(rs.zetas.size(), 1000));
        double worst_phi = 0.0;
        for (const double z : {0.5, 2.0, 5.0}) {
          const Complex got = wienerhopf::phi_plus(rs, Complex(z, 0.0), pairs);
          worst_phi = std::max(worst_phi, std::abs(got - ref.phi_plus_exact(Complex(z, 0.0))));
        }
        add("poisson_phi_plus_error", worst_phi, 1e-6);
      }
    }
  }

  // Wiener-Hopf factorization identity probe on the imaginary axis
  {
    const int pairs = int(std::min<std::size_t>(rs.zetas.size(), 2000));
    double worst = 0.0;
    for (const double zs : {0.3, 1.0, 3.0}) {
      const Complex iz(0.0, zs);
      const Complex lhs = wienerhopf::phi_plus(rs, -iz, pairs) *
                          wienerhopf::phi_minus(*built.levy, rs, iz, pairs);
      const Complex rhs = q / (q - built.levy->psi(iz));
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    add("wh_factorization_identity", worst, 1e-4);
  }

  // MC vs series CDF (KS) for models with a defined density
  if (built.family != config::ModelFamily::spectrally_negative) {
    const auto sd = wienerhopf::compute_residues(*built.levy, rs, n_roots);
    if (sd.density_defined) {
      const auto mc = config::read_mc_config(cfg);
      const auto samples = oracles::mc_supremum(*built.levy, q, mc, threads);
      double ks = 0.0;
      const double n = double(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = std::min(wienerhopf::supremum_cdf(sd, samples[i]).value, 1.0);
        ks = std::max(ks, std::max(f - double(i) / n, double(i + 1) / n - f));
      }
      add("mc_ks_distance", ks, 3.0 * 1.358 / std::sqrt(n));
    }
  }

  // Bromwich inversion vs the scale series
  if (built.family == config::ModelFamily::spectrally_negative) {
    auto ctx = scale::build_scale_context(*built.spectrally_negative, q, n_roots);
    const double c = ctx.phi_q + 1.0;
    double worst = 0.0;
    for (const double x : {0.5, 1.5, 3.0}) {
      const double series = scale::scale_function(ctx, x);
      const double inv = oracles::bromwich_scale(*built.spectrally_negative, q, x, c, 200.0, 200000);
      worst = std::max(worst, std::abs(series - inv));
    }
    const double tol = built.spectrally_negative->params().sigma > 0.0 ? 1e-4 : 1e-3;
    add("bromwich_gap", worst, tol);
  }

  bool all_pass = true;
  csv::Writer out((dir / "report.csv").string());
  out.header({"check", "measured", "threshold", "pass"});
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    out.row_strings({c.name, csv::format_double(c.measured), csv::format_double(c.threshold),
                     c.pass ? "1" : "0"});
    std::printf("%-28s %-5s measured=%.6g threshold=%.6g\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.measured, c.threshold);
  }
  out.meta("config_hash", cfg.hash());
  out.meta("mc_generator", oracles::mc_generator_name());
  return all_pass ? kExitOk : kExitValidationFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiener-Hopf factorization, supremum densities and scale functions for Levy "
               "processes with bounded positive jumps"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "key=value config file")->required();
    sub->add_option("--out", args.out_dir, "output directory (default: current)");
    sub->add_option("--roots", args.roots_override, "override n_roots");
    sub->add_option("--threads", args.threads, "worker threads (0 = hardware)");
    sub->add_option("--seed", args.seed_override, "override oracle.seed");
  };
  auto* sub_roots = app.add_subcommand("roots", "compute zeta_0 and the first-quadrant roots");
  auto* sub_density = app.add_subcommand("density", "supremum density series on a grid");
  auto* sub_scale = app.add_subcommand("scale", "scale function W^(q) on a grid");
  auto* sub_validate = app.add_subcommand("validate", "run the oracle cross-check suite");
  for (auto* s : {sub_roots, sub_density, sub_scale, sub_validate}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sub_roots->parsed()) return cmd_roots(args);
    if (sub_density->parsed()) return cmd_density(args);
    if (sub_scale->parsed()) return cmd_scale(args);
    if (sub_validate->parsed()) return cmd_validate(args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
