#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace cdft::cli {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("csv: row width does not match header");
  rows_.push_back(std::move(row));
}

bool CsvTable::finite() const {
  for (const auto& row : rows_)
    for (const Cell& c : row)
      if (const double* d = std::get_if<double>(&c); d && !std::isfinite(*d)) return false;
  return true;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::write(const std::filesystem::path& path, const Metadata& meta) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << "\n";
  out << "# experiment=" << meta.experiment << "\n";
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(meta.config_hash));
  out << "# config_hash=" << hash << "\n";
  out << "# tool_version=" << kToolVersion << "\n";
  out << "# seed=" << meta.seed << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out << format_double(v);
            else if constexpr (std::is_same_v<T, long long>)
              out << v;
            else if constexpr (std::is_same_v<T, std::string>)
              out << v;
          },
          row[i]);
    }
    out << "\n";
  }
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<Series>& series) {
  constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double x : s.x) xmin = std::min(xmin, x), xmax = std::max(xmax, x);
    for (double y : s.y) ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
  auto sy = [&](double y) { return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom); };

  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << xlabel << "</text>\n";
  out << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << height / 2 << ")\">" << ylabel << "</text>\n";
  out << "<text x=\"" << left << "\" y=\"" << height - bottom + 16 << "\" font-size=\"10\">" << format_double(xmin)
      << "</text>\n";
  out << "<text x=\"" << width - right << "\" y=\"" << height - bottom + 16 << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_double(xmax) << "</text>\n";
  out << "<text x=\"" << left - 4 << "\" y=\"" << height - bottom << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_double(ymin) << "</text>\n";
  out << "<text x=\"" << left - 4 << "\" y=\"" << top + 8 << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_double(ymax) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = colours[k % 5];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) out << sx(s.x[i]) << "," << sy(s.y[i]) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << width - right - 4 << "\" y=\"" << top + 14 * (k + 1) << "\" font-size=\"11\" fill=\""
        << colour << "\" text-anchor=\"end\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace cdft::cli
