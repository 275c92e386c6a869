#include "levywh/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace levywh::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: " + origin + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: " + origin + ":" + std::to_string(lineno) + ": empty key");
    if (value.empty())
      throw ConfigError("config: " + origin + ":" + std::to_string(lineno) + ": empty value for '" +
                        key + "'");
    if (cfg.values_.count(key))
      throw ConfigError("config: " + origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
    cfg.values_[key] = value;
    any = true;
  }
  if (!any) throw ConfigError("config: " + origin + ": no key=value entries found");
  return cfg;
}

std::string RunConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
  return it->second;
}

std::string RunConfig::get_string_or(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': '" + v + "' is not a number");
  }
}

double RunConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long RunConfig::get_long(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': '" + v + "' is not an integer");
  }
}

long RunConfig::get_long_or(const std::string& key, long fallback) const {
  return has(key) ? get_long(key) : fallback;
}

std::uint64_t RunConfig::get_u64_or(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("config: key '" + key + "': '" + v + "' is not an unsigned integer");
  return out;
}

std::map<std::string, std::string> RunConfig::section(const std::string& prefix) const {
  std::map<std::string, std::string> out;
  const std::string p = prefix + ".";
  for (const auto& [k, v] : values_)
    if (k.rfind(p, 0) == 0) out[k.substr(p.size())] = v;
  return out;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a 64
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : canonical()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

ModelFamily parse_family(const std::string& name) {
  if (name == "kobol") return ModelFamily::kobol;
  if (name == "spectrally_negative") return ModelFamily::spectrally_negative;
  if (name == "lattice") return ModelFamily::lattice;
  throw ConfigError("config: unknown model.family '" + name +
                    "' (expected kobol | spectrally_negative | lattice)");
}

BuiltModel build_model(const RunConfig& cfg) {
  BuiltModel out{parse_family(cfg.get_string("model.family")), nullptr, std::nullopt};
  try {
    switch (out.family) {
      case ModelFamily::kobol: {
        KobolParams p;
        p.sigma = cfg.get_double_or("model.sigma", 0.0);
        p.mu = cfg.get_double_or("model.mu", 0.0);
        p.c_pos = cfg.get_double("model.c_pos");
        p.c_neg = cfg.get_double("model.c_neg");
        p.alpha_pos = cfg.get_double("model.alpha_pos");
        p.alpha_neg = cfg.get_double("model.alpha_neg");
        p.beta_pos = cfg.get_double("model.beta_pos");
        p.beta_neg = cfg.get_double("model.beta_neg");
        p.jump_bound = cfg.get_double("model.k");
        out.levy = std::make_unique<TruncatedKobolModel>(p);
        break;
      }
      case ModelFamily::spectrally_negative: {
        SpectrallyNegativeParams p;
        p.sigma = cfg.get_double_or("model.sigma", 0.0);
        p.mu = cfg.get_double_or("model.mu", 0.0);
        p.c = cfg.get_double("model.c");
        p.alpha = cfg.get_double("model.alpha");
        p.beta = cfg.get_double("model.beta");
        p.jump_bound = cfg.get_double("model.k");
        out.spectrally_negative.emplace(p);
        out.levy = std::make_unique<TruncatedKobolModel>(out.spectrally_negative->dual());
        break;
      }
      case ModelFamily::lattice: {
        LatticeParams p;
        p.spacing = cfg.get_double("model.h");
        p.drift = cfg.get_double_or("model.drift", 0.0);
        p.sigma = cfg.get_double_or("model.sigma", 0.0);
        for (const auto& [k, v] : cfg.section("model.mass")) {
          try {
            std::size_t pos = 0;
            const int j = std::stoi(k, &pos);
            if (pos != k.size()) throw std::invalid_argument(k);
            p.masses[j] = std::stod(v);
          } catch (const std::exception&) {
            throw ConfigError("config: bad lattice atom 'model.mass." + k + " = " + v + "'");
          }
        }
        out.levy = std::make_unique<LatticeCompoundPoissonModel>(p);
        break;
      }
    }
  } catch (const ModelError& e) {
    // surfaced as a config problem: the parameters are what is wrong
    throw ConfigError(std::string("config: ") + e.what());
  }
  return out;
}

GridSpec read_grid(const RunConfig& cfg) {
  GridSpec g;
  g.x_min = cfg.get_double("grid.x_min");
  g.x_max = cfg.get_double("grid.x_max");
  g.n_points = int(cfg.get_long("grid.n_points"));
  if (g.n_points < 2) throw ConfigError("config: grid.n_points must be >= 2");
  if (!(g.x_min < g.x_max)) throw ConfigError("config: grid.x_min must be < grid.x_max");
  return g;
}

oracles::McConfig read_mc_config(const RunConfig& cfg) {
  oracles::McConfig mc;
  mc.n_paths = cfg.get_long_or("oracle.n_paths", mc.n_paths);
  mc.jump_cutoff_eps = cfg.get_double_or("oracle.eps", mc.jump_cutoff_eps);
  mc.seed = cfg.get_u64_or("oracle.seed", mc.seed);
  mc.antithetic = cfg.get_long_or("oracle.antithetic", 0) != 0;
  return mc;
}

}  // namespace levywh::config
