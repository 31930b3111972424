#pragma once

// Seeded sampling. All randomness in the library goes through Rng so runs are
// replayable bit-for-bit across standard library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "angle_rigidity/configuration.hpp"
#include "angle_rigidity/graph.hpp"

namespace angle_rigidity {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, count).
  std::size_t index(std::size_t count) { return static_cast<std::size_t>(uniform01() * static_cast<double>(count)); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// q_i = radius * (cos(2 pi i / n), sin(2 pi i / n)), i = 1..n.
inline Configuration regular_polygon(int n, double radius = 1.0) {
  std::vector<Vector2> pts;
  for (int i = 1; i <= n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    pts.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  return Configuration(pts);
}

// Adds an independent uniform(-amplitude, amplitude) draw to every coordinate.
inline Configuration perturb(const Configuration& base, double amplitude, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd p = base.stacked();
  for (Eigen::Index c = 0; c < p.size(); ++c) p(c) += rng.uniform(-amplitude, amplitude);
  return Configuration(p);
}

inline Configuration random_configuration(int n, Rng& rng, double half_width = 1.0) {
  Eigen::VectorXd p(2 * n);
  for (Eigen::Index c = 0; c < p.size(); ++c) p(c) = rng.uniform(-half_width, half_width);
  return Configuration(p);
}

// Random spanning tree plus `extra` additional distinct edges.
inline Graph random_connected_graph(int n, int extra, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex v = 2; v <= n; ++v) {
    const Vertex parent = 1 + static_cast<Vertex>(rng.index(static_cast<std::size_t>(v - 1)));
    edges.push_back({parent, v});
  }
  std::vector<Edge> missing;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      bool used = false;
      for (const auto& e : edges) used = used || (e.i == a && e.j == b);
      if (!used) missing.push_back({a, b});
    }
  }
  for (int k = 0; k < extra && !missing.empty(); ++k) {
    const std::size_t pick = rng.index(missing.size());
    edges.push_back(missing[pick]);
    missing.erase(missing.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Graph(n, edges);
}

// Each new vertex attaches to a uniformly chosen existing edge.
inline LamanConstruction random_laman_construction(int n, Rng& rng) {
  LamanConstruction c;
  std::vector<Edge> edges{{1, 2}};
  for (Vertex l = 3; l <= n; ++l) {
    const Edge base = edges[rng.index(edges.size())];
    c.steps.push_back({l, base.i, base.j});
    edges.push_back({base.i, l});
    edges.push_back({base.j, l});
  }
  return c;
}

}  // namespace angle_rigidity
