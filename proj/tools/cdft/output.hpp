#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace cdft::cli {

inline constexpr const char* kToolVersion = "0.1.0";

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Metadata {
  std::string experiment;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::vector<Cell>>& data() const { return rows_; }

  // False if any numeric cell is NaN or infinite.
  bool finite() const;

  // Header line, then '#' metadata lines, then rows.
  void write(const std::filesystem::path& path, const Metadata& meta) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<Series>& series);

}  // namespace cdft::cli
