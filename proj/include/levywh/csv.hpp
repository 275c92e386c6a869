#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "levywh/errors.hpp"

namespace levywh::csv {

/// Shortest round-trip decimal form of a double (bit-exact on re-parse).
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Comma-delimited, LF line endings, one header row, then data rows, then a
// #-prefixed metadata block.
class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("csv: cannot open '" + path + "' for writing");
  }

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out_ << ',';
      out_ << cols[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_double(vals[i]);
    }
    out_ << '\n';
  }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << " = " << value << '\n';
  }
  void meta(const std::string& key, double value) { meta(key, format_double(value)); }
  void meta(const std::string& key, std::uint64_t value) { meta(key, std::to_string(value)); }

 private:
  std::ofstream out_;
};

}  // namespace levywh::csv
