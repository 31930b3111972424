#pragma once

// Reports are built as ordered JSON and also flattened to `key = value`
// lines for the text form.

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/io/csv.hpp"
#include "angle_rigidity/rigidity.hpp"

namespace angle_rigidity::io {

using Report = nlohmann::ordered_json;

namespace detail {

inline std::string scalar_text(const Report& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    return std::isfinite(x) ? format_number(x) : "nan";
  }
  if (j.is_null()) return "none";
  return j.dump();
}

inline bool all_scalars(const Report& arr) {
  for (const auto& e : arr) {
    if (e.is_structured()) return false;
  }
  return true;
}

inline void flatten(std::ostream& os, const Report& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(os, v, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  if (j.is_array() && !all_scalars(j)) {
    // Arrays of tuples print one line each when they hold only scalars.
    std::size_t idx = 0;
    for (const auto& e : j) {
      const std::string key = prefix + "." + std::to_string(idx++);
      if (e.is_array() && all_scalars(e)) {
        std::string line;
        for (const auto& x : e) line += (line.empty() ? "" : " ") + scalar_text(x);
        os << key << " = " << line << '\n';
      } else {
        flatten(os, e, key);
      }
    }
    return;
  }
  if (j.is_array()) {
    std::string line;
    for (const auto& x : j) line += (line.empty() ? "" : " ") + scalar_text(x);
    os << prefix << " = " << line << '\n';
    return;
  }
  os << prefix << " = " << scalar_text(j) << '\n';
}

}  // namespace detail

inline void write_text_report(std::ostream& os, const Report& r) { detail::flatten(os, r, ""); }

inline std::string text_report(const Report& r) {
  std::ostringstream ss;
  write_text_report(ss, r);
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

inline Report rigidity_json(const RigidityReport& rep, int tail = 5) {
  Report j;
  j["verdict"] = rep.verdict;
  j["rows"] = rep.rows;
  j["cols"] = rep.cols;
  j["rank"] = rep.rank;
  j["expected_rank"] = rep.expected_rank;
  j["nullspace_dim"] = rep.nullspace_dim;
  j["tolerance"] = rep.tolerance;
  Report sv = Report::array();
  const auto count = rep.singular_values.size();
  for (Eigen::Index s = std::max<Eigen::Index>(0, count - tail); s < count; ++s) sv.push_back(rep.singular_values(s));
  j["singular_value_tail"] = sv;
  return j;
}

inline Report triples_json(const AngleIndexSet& t) {
  Report arr = Report::array();
  for (const auto& tri : t) arr.push_back({tri.apex, tri.j, tri.k});
  return arr;
}

}  // namespace angle_rigidity::io
