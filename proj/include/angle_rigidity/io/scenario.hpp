#pragma once

// Scenario files (JSON, schema version 1).
//
//   {
//     "schema_version": 1,
//     "name": "pentagon",
//     "graph": {"n": 5, "edges": [[1,2], [1,3], ...]},
//     "configuration": {"points": [[x,y], ...]}
//                    | {"generator": "regular_polygon", "n": 5, "radius": 1.0},
//       optionally with "perturbation": {"amplitude": 0.5, "seed": 1}
//       or "initial_points": [[x,y], ...] (simulation start; default = target)
//     "angle_set": {"source": "triangle_formation"}       (default)
//                | {"source": "explicit", "triples": [[1,3,4], ...]}
//                | {"source": "algorithm1", "seed": 7}     (seed optional)
//     "laman": [[3,1,2], [4,1,3], ...]                      (new vertex, i, j)
//     "maneuver": {"leaders": [3,4], "displacement": [-0.5, 0.0]}
//     "integrator": {"step": 1e-3, "t_final": 50, "record_stride": 0.1,
//                    "cost_threshold": 1e-14, "gradient_threshold": 1e-10}
//   }

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/formation.hpp"
#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/random.hpp"

namespace angle_rigidity::io {

inline constexpr int kSchemaVersion = 1;

enum class AngleSource { kFull, kAlgorithm1, kLamanMinimal, kLamanGlobal, kTriangleFormation, kExplicit };

inline std::optional<AngleSource> parse_angle_source(std::string_view s) {
  if (s == "full") return AngleSource::kFull;
  if (s == "algorithm1") return AngleSource::kAlgorithm1;
  if (s == "laman_minimal") return AngleSource::kLamanMinimal;
  if (s == "laman_global") return AngleSource::kLamanGlobal;
  if (s == "triangle_formation") return AngleSource::kTriangleFormation;
  if (s == "explicit") return AngleSource::kExplicit;
  return std::nullopt;
}

struct AngleSetSpec {
  AngleSource source = AngleSource::kTriangleFormation;
  std::vector<Triple> triples;  // explicit only
  std::optional<std::uint64_t> seed;  // algorithm1 only
};

struct PerturbationSpec {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name;
  Graph graph;
  Configuration configuration;
  std::optional<PerturbationSpec> perturbation;
  std::optional<Configuration> initial_points;
  AngleSetSpec angle_set;
  std::optional<LamanConstruction> laman;
  std::optional<LeaderTarget> maneuver;
  IntegratorConfig integrator;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

inline long long as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<long long>();
}

inline std::vector<long long> int_tuple(const json& j, std::size_t size, const std::string& path) {
  if (!j.is_array() || j.size() != size) field_error(path, "expected an array of " + std::to_string(size) + " integers");
  std::vector<long long> out;
  for (std::size_t k = 0; k < size; ++k) out.push_back(as_integer(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline Vector2 point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) field_error(path, "expected [x, y]");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

inline std::vector<Vector2> point_list(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of points");
  std::vector<Vector2> pts;
  for (std::size_t k = 0; k < j.size(); ++k) pts.push_back(point(j[k], path + "[" + std::to_string(k) + "]"));
  return pts;
}

inline Configuration checked_configuration(const std::vector<Vector2>& pts, int n, const std::string& path) {
  if (static_cast<int>(pts.size()) != n) {
    throw ValidationError(path + ": " + std::to_string(pts.size()) + " points for " + std::to_string(n) + " vertices");
  }
  try {
    return Configuration(pts);
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw ParseError("scenario must be a JSON object");

  Scenario sc;
  sc.schema_version = static_cast<int>(detail::as_integer(detail::require(root, "schema_version", ""), "schema_version"));
  if (sc.schema_version != kSchemaVersion) {
    throw ValidationError("unsupported schema_version " + std::to_string(sc.schema_version));
  }
  if (auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) detail::field_error("name", "expected a string");
    sc.name = it->get<std::string>();
  }

  const json& g = detail::require(root, "graph", "");
  const long long n = detail::as_integer(detail::require(g, "n", "graph"), "graph.n");
  if (n < 2) throw ValidationError("graph.n must be at least 2");
  const json& edges = detail::require(g, "edges", "graph");
  if (!edges.is_array()) detail::field_error("graph.edges", "expected an array");
  std::vector<Edge> edge_list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto e = detail::int_tuple(edges[k], 2, "graph.edges[" + std::to_string(k) + "]");
    const Edge edge{static_cast<Vertex>(e[0]), static_cast<Vertex>(e[1])};
    if (e[0] < 1 || e[0] > n || e[1] < 1 || e[1] > n) {
      throw ValidationError("edge " + to_string(edge) + " references a vertex outside 1.." + std::to_string(n));
    }
    edge_list.push_back(edge);
  }
  try {
    sc.graph = Graph(static_cast<int>(n), edge_list);
  } catch (const Error& e) {
    throw ValidationError(std::string("graph: ") + e.what());
  }

  const json& conf = detail::require(root, "configuration", "");
  const bool has_points = conf.is_object() && conf.contains("points");
  const bool has_generator = conf.is_object() && conf.contains("generator");
  if (has_points == has_generator) {
    throw ValidationError("configuration: exactly one of 'points' or 'generator' is required");
  }
  if (has_points) {
    sc.configuration = detail::checked_configuration(detail::point_list(conf["points"], "configuration.points"),
                                                     static_cast<int>(n), "configuration.points");
  } else {
    const json& gen = conf["generator"];
    if (!gen.is_string() || gen.get<std::string>() != "regular_polygon") {
      throw ValidationError("configuration.generator: only 'regular_polygon' is supported");
    }
    const long long gn = conf.contains("n") ? detail::as_integer(conf["n"], "configuration.n") : n;
    if (gn != n) throw ValidationError("configuration.n does not match graph.n");
    const double radius = conf.contains("radius") ? detail::as_number(conf["radius"], "configuration.radius") : 1.0;
    if (!(radius > 0.0)) throw ValidationError("configuration.radius must be positive");
    sc.configuration = regular_polygon(static_cast<int>(n), radius);
  }
  if (conf.contains("perturbation") && conf.contains("initial_points")) {
    throw ValidationError("configuration: 'perturbation' and 'initial_points' are exclusive");
  }
  if (conf.contains("perturbation")) {
    const json& pj = conf["perturbation"];
    PerturbationSpec ps;
    ps.amplitude = detail::as_number(detail::require(pj, "amplitude", "configuration.perturbation"),
                                     "configuration.perturbation.amplitude");
    const long long seed = detail::as_integer(detail::require(pj, "seed", "configuration.perturbation"),
                                              "configuration.perturbation.seed");
    if (ps.amplitude < 0.0) throw ValidationError("configuration.perturbation.amplitude must be >= 0");
    if (seed < 0) throw ValidationError("configuration.perturbation.seed must be >= 0");
    ps.seed = static_cast<std::uint64_t>(seed);
    sc.perturbation = ps;
  }
  if (conf.contains("initial_points")) {
    sc.initial_points = detail::checked_configuration(
        detail::point_list(conf["initial_points"], "configuration.initial_points"), static_cast<int>(n),
        "configuration.initial_points");
  }

  if (auto it = root.find("angle_set"); it != root.end()) {
    const json& a = *it;
    const json& src = detail::require(a, "source", "angle_set");
    if (!src.is_string()) detail::field_error("angle_set.source", "expected a string");
    const auto source = parse_angle_source(src.get<std::string>());
    if (!source) throw ValidationError("angle_set.source: unknown source '" + src.get<std::string>() + "'");
    sc.angle_set.source = *source;
    if (*source == AngleSource::kExplicit) {
      const json& tj = detail::require(a, "triples", "angle_set");
      if (!tj.is_array()) detail::field_error("angle_set.triples", "expected an array");
      for (std::size_t k = 0; k < tj.size(); ++k) {
        const auto t = detail::int_tuple(tj[k], 3, "angle_set.triples[" + std::to_string(k) + "]");
        sc.angle_set.triples.push_back(
            {static_cast<Vertex>(t[0]), static_cast<Vertex>(t[1]), static_cast<Vertex>(t[2])});
      }
    }
    if (a.contains("seed")) {
      const long long seed = detail::as_integer(a["seed"], "angle_set.seed");
      if (seed < 0) throw ValidationError("angle_set.seed must be >= 0");
      sc.angle_set.seed = static_cast<std::uint64_t>(seed);
    }
  }

  if (auto it = root.find("laman"); it != root.end()) {
    if (!it->is_array()) detail::field_error("laman", "expected an array of [new_vertex, i, j]");
    LamanConstruction lc;
    for (std::size_t k = 0; k < it->size(); ++k) {
      const auto s = detail::int_tuple((*it)[k], 3, "laman[" + std::to_string(k) + "]");
      lc.steps.push_back({static_cast<Vertex>(s[0]), static_cast<Vertex>(s[1]), static_cast<Vertex>(s[2])});
    }
    if (lc.vertex_count() != n) {
      throw ValidationError("laman: construction builds " + std::to_string(lc.vertex_count()) + " vertices, graph has " +
                            std::to_string(n));
    }
    try {
      build_laman(lc);
    } catch (const Error& e) {
      throw ValidationError(std::string("laman: ") + e.what());
    }
    sc.laman = lc;
  }

  if (auto it = root.find("maneuver"); it != root.end()) {
    const auto l = detail::int_tuple(detail::require(*it, "leaders", "maneuver"), 2, "maneuver.leaders");
    LeaderTarget m;
    m.leaders = {static_cast<Vertex>(l[0]), static_cast<Vertex>(l[1])};
    m.displacement = detail::point(detail::require(*it, "displacement", "maneuver"), "maneuver.displacement");
    if (!sc.graph.has_edge(m.leaders.l1, m.leaders.l2) || m.leaders.l1 == m.leaders.l2) {
      throw ValidationError("maneuver.leaders (" + std::to_string(l[0]) + "," + std::to_string(l[1]) +
                            ") is not an edge");
    }
    sc.maneuver = m;
  }

  if (auto it = root.find("integrator"); it != root.end()) {
    const json& ij = *it;
    if (!ij.is_object()) detail::field_error("integrator", "expected an object");
    auto& cfg = sc.integrator;
    if (ij.contains("step")) cfg.step = detail::as_number(ij["step"], "integrator.step");
    if (ij.contains("t_final")) cfg.t_final = detail::as_number(ij["t_final"], "integrator.t_final");
    if (ij.contains("record_stride")) cfg.record_stride = detail::as_number(ij["record_stride"], "integrator.record_stride");
    if (ij.contains("cost_threshold")) cfg.cost_threshold = detail::as_number(ij["cost_threshold"], "integrator.cost_threshold");
    if (ij.contains("gradient_threshold")) {
      cfg.gradient_threshold = detail::as_number(ij["gradient_threshold"], "integrator.gradient_threshold");
    }
    if (!(cfg.step > 0.0) || !(cfg.t_final > 0.0) || !(cfg.record_stride > 0.0)) {
      throw ValidationError("integrator: step, t_final and record_stride must be positive");
    }
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

// Replaces every seed the scenario names.
inline void apply_seed_override(Scenario& sc, std::uint64_t seed) {
  if (sc.perturbation) sc.perturbation->seed = seed;
  if (sc.angle_set.seed) sc.angle_set.seed = seed;
}

inline Configuration initial_configuration(const Scenario& sc) {
  if (sc.initial_points) return *sc.initial_points;
  if (sc.perturbation) return perturb(sc.configuration, sc.perturbation->amplitude, sc.perturbation->seed);
  return sc.configuration;
}

inline AngleIndexSet resolve_angle_set(const Scenario& sc, AngleSource source) {
  const auto need_laman = [&]() -> const LamanConstruction& {
    if (!sc.laman) throw ValidationError("angle set source needs a 'laman' construction");
    return *sc.laman;
  };
  try {
    switch (source) {
      case AngleSource::kFull: return full_angle_set(sc.graph);
      case AngleSource::kAlgorithm1:
        return algorithm1_set(sc.graph, sc.configuration,
                              sc.angle_set.seed ? SelectionPolicy::seeded(*sc.angle_set.seed)
                                                : SelectionPolicy::deterministic());
      case AngleSource::kLamanMinimal: return laman_minimal_set(need_laman());
      case AngleSource::kLamanGlobal: return laman_global_set(need_laman());
      case AngleSource::kTriangleFormation: return triangle_formation_set(sc.graph);
      case AngleSource::kExplicit: {
        AngleIndexSet t(sc.angle_set.triples, Provenance::kExplicit);
        t.validate(sc.graph);
        return t;
      }
    }
  } catch (const InvalidArgument& e) {
    throw ValidationError(std::string("angle_set: ") + e.what());
  } catch (const NotAnEdge& e) {
    throw ValidationError(std::string("angle_set: ") + e.what());
  } catch (const VertexOutOfRange& e) {
    throw ValidationError(std::string("angle_set: ") + e.what());
  }
  throw ValidationError("unknown angle set source");
}

inline AngleIndexSet resolve_angle_set(const Scenario& sc) { return resolve_angle_set(sc, sc.angle_set.source); }

inline FormationSpec formation_spec(const Scenario& sc) {
  return FormationSpec(sc.graph, sc.configuration, resolve_angle_set(sc), sc.maneuver, sc.laman);
}

}  // namespace angle_rigidity::io
