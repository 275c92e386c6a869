#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levywh/models.hpp"
#include "levywh/oracles.hpp"

namespace levywh::config {

// Flat key=value configuration with dotted section prefixes
// (model.family=kobol, grid.x_min=0.005, oracle.n_paths=100000, ...).
class RunConfig {
 public:
  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_text(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  long get_long(const std::string& key) const;
  long get_long_or(const std::string& key, long fallback) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Keys under `prefix.` with the prefix stripped.
  std::map<std::string, std::string> section(const std::string& prefix) const;

  /// Canonical serialization (sorted key=value lines) and its FNV-1a hash;
  /// both include any CLI overrides applied via set().
  std::string canonical() const;
  std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> values_;
};

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;
};

enum class ModelFamily { kobol, spectrally_negative, lattice };

struct BuiltModel {
  ModelFamily family;
  // positive-jump-bounded view: the model itself (kobol/lattice) or the dual
  // of a spectrally negative model
  std::unique_ptr<LevyModel> levy;
  // the spectrally negative model when family == spectrally_negative
  std::optional<SpectrallyNegativeModel> spectrally_negative;
};

ModelFamily parse_family(const std::string& name);
BuiltModel build_model(const RunConfig& cfg);
GridSpec read_grid(const RunConfig& cfg);
oracles::McConfig read_mc_config(const RunConfig& cfg);

}  // namespace levywh::config
