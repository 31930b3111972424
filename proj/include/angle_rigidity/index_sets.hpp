#pragma once

// Angle index sets: the full set, the per-vertex construction that certifies
// infinitesimal angle rigidity, the triangle-based formation set, and the
// minimal/global sets of triangulated Laman graphs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "angle_rigidity/angle_index_set.hpp"
#include "angle_rigidity/configuration.hpp"
#include "angle_rigidity/graph.hpp"
#include "angle_rigidity/random.hpp"
#include "angle_rigidity/rigidity.hpp"

namespace angle_rigidity {

inline AngleIndexSet full_angle_set(const Graph& g) {
  std::vector<Triple> out;
  for (Vertex i = 1; i <= g.vertex_count(); ++i) {
    const auto& nbrs = g.neighbors(i);
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) out.push_back({i, nbrs[a], nbrs[b]});
    }
  }
  return AngleIndexSet(std::move(out), Provenance::kFull);
}

// Complete graph on n vertices.
inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) edges.push_back({a, b});
  }
  return Graph(n, std::move(edges));
}

// For every triangle a<b<c: apexes a and b, each paired with the largest
// vertex c, i.e. (a,b,c) and (b,a,c).
inline AngleIndexSet triangle_formation_set(const Graph& g) {
  std::vector<Triple> out;
  for (const auto& tri : triangles(g)) {
    out.push_back({tri[0], tri[1], tri[2]});
    out.push_back({tri[1], tri[0], tri[2]});
  }
  return AngleIndexSet(std::move(out), Provenance::kTriangleFormation);
}

inline AngleIndexSet laman_minimal_set(const LamanConstruction& construction) {
  return AngleIndexSet(triangle_formation_set(build_laman(construction)).triples(), Provenance::kLamanMinimal);
}

// Minimal set plus, for every inserted vertex l >= 4 attached to i<j, the
// triple (i, k, l) with k the smallest common neighbor of i and j below l.
inline AngleIndexSet laman_global_set(const LamanConstruction& construction) {
  const Graph g = build_laman(construction);
  std::vector<Triple> out = laman_minimal_set(construction).triples();
  for (const auto& step : construction.steps) {
    const Vertex l = step.vertex;
    if (l < 4) continue;
    const Vertex i = std::min(step.i, step.j);
    const Vertex j = std::max(step.i, step.j);
    std::optional<Vertex> k;
    for (Vertex w : g.neighbors(i)) {
      if (w < l && g.has_edge(j, w)) {
        k = w;
        break;
      }
    }
    if (!k) throw InvalidStep("edge (" + std::to_string(i) + "," + std::to_string(j) + ") lies in no triangle");
    out.push_back({i, *k, l});
  }
  return AngleIndexSet(std::move(out), Provenance::kLamanGlobal);
}

// Deterministic selection takes the smallest label; a seed switches to
// uniform random choices.
struct SelectionPolicy {
  std::optional<std::uint64_t> seed;

  static SelectionPolicy deterministic() { return {}; }
  static SelectionPolicy seeded(std::uint64_t s) { return {s}; }
};

inline AngleIndexSet algorithm1_set(const Graph& g, const Configuration& p,
                                    SelectionPolicy policy = SelectionPolicy::deterministic()) {
  if (!is_infinitesimally_angle_rigid(g, p, full_angle_set(g)).verdict) {
    throw NotInfinitesimallyAngleRigid("framework is not infinitesimally angle rigid");
  }
  std::optional<Rng> rng;
  if (policy.seed) rng.emplace(*policy.seed);
  const auto pick = [&](const std::vector<Vertex>& from) {
    return rng ? from[rng->index(from.size())] : from.front();
  };

  std::vector<Triple> out;
  for (Vertex i = 1; i <= g.vertex_count(); ++i) {
    const auto& nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    const Vertex ji = pick(nbrs);
    const Vector2 gi = bearing(p, i, ji);
    std::vector<Vertex> same_line{ji};
    std::vector<Vertex> off_line;
    for (Vertex k : nbrs) {
      if (k == ji) continue;
      (collinear(gi, bearing(p, i, k)) ? same_line : off_line).push_back(k);
    }
    for (Vertex k : off_line) out.push_back({i, std::min(ji, k), std::max(ji, k)});
    if (same_line.size() <= 1) continue;
    if (off_line.empty()) {
      throw NotInfinitesimallyAngleRigid("all bearings at vertex " + std::to_string(i) + " are collinear");
    }
    const Vertex ki = pick(off_line);
    for (Vertex j : same_line) {
      if (j == ji) continue;
      out.push_back({i, std::min(j, ki), std::max(j, ki)});
    }
  }
  return AngleIndexSet(std::move(out), Provenance::kAlgorithm1);
}

}  // namespace angle_rigidity
