#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace disorder {

/// Serializes a double with 17 significant digits; +inf becomes the token
/// "inf" (used for t_star columns).
inline std::string csv_value(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string csv_value(std::uint64_t x) { return std::to_string(x); }
inline std::string csv_value(int x) { return std::to_string(x); }
inline std::string csv_value(std::size_t x) { return std::to_string(x); }
inline std::string csv_value(const std::string& x) { return x; }

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path);
    write_line(header);
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    std::vector<std::string> cells{csv_value(fields)...};
    write_line(cells);
  }

 private:
  void write_line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
};

}  // namespace disorder
