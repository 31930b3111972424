#pragma once

// Shortest round-trip number formatting and the trajectory/cost CSV files.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/formation.hpp"

namespace angle_rigidity::io {

inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not a number: '" + std::string(s) + "'");
  }
  return x;
}

inline std::string trajectory_header(int n) {
  std::string h = "t";
  for (int i = 1; i <= n; ++i) h += ",p" + std::to_string(i) + "x,p" + std::to_string(i) + "y";
  return h;
}

inline constexpr const char* kCostHeader = "t,V_F,V_M,V,centroid_x,centroid_y,scale";

inline void write_trajectory_csv(std::ostream& os, const SimulationResult& r) {
  os << trajectory_header(r.positions.front().size()) << '\n';
  for (std::size_t s = 0; s < r.times.size(); ++s) {
    os << format_number(r.times[s]);
    const auto& p = r.positions[s].stacked();
    for (Eigen::Index c = 0; c < p.size(); ++c) os << ',' << format_number(p(c));
    os << '\n';
  }
}

inline void write_cost_csv(std::ostream& os, const SimulationResult& r) {
  os << kCostHeader << '\n';
  for (std::size_t s = 0; s < r.times.size(); ++s) {
    os << format_number(r.times[s]) << ',' << format_number(r.cost_F[s]) << ',' << format_number(r.cost_M[s]) << ','
       << format_number(r.cost_total[s]) << ',' << format_number(r.centroids[s].x()) << ','
       << format_number(r.centroids[s].y()) << ',' << format_number(r.scales[s]) << '\n';
  }
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  table.header = split_csv_line(line);
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != table.header.size()) {
      throw ParseError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                       " columns");
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c));
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_csv(in);
}

}  // namespace angle_rigidity::io
