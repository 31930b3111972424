#pragma once

// Undirected graphs with 1-based vertex labels and a canonical edge order,
// incidence matrices, and triangulated Laman graph construction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "angle_rigidity/errors.hpp"

namespace angle_rigidity {

using Vertex = int;

struct Edge {
  Vertex i = 0;
  Vertex j = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
}

class Graph {
 public:
  Graph() = default;

  // Edges may be given in either orientation; they are stored as i<j in
  // lexicographic order.
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw InvalidArgument("graph needs at least one vertex");
    for (auto& e : edges_) {
      if (e.i < 1 || e.i > n_ || e.j < 1 || e.j > n_) {
        throw VertexOutOfRange("edge " + to_string(e) + " references a vertex outside 1.." +
                               std::to_string(n_));
      }
      if (e.i == e.j) throw InvalidArgument("self loop " + to_string(e));
      if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
      throw InvalidArgument("duplicate edge " + to_string(*dup));
    }
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    for (const auto& e : edges_) {
      adjacency_[e.i - 1].push_back(e.j);
      adjacency_[e.j - 1].push_back(e.i);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[v - 1];
  }

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a < 1 || a > n_ || b < 1 || b > n_ || a == b) return false;
    const auto& nbrs = adjacency_[a - 1];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  // Position of the edge {a,b} in the canonical order, or -1.
  int edge_index(Vertex a, Vertex b) const {
    const Edge key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  void check_vertex(Vertex v) const {
    if (v < 1 || v > n_) {
      throw VertexOutOfRange("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
    }
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

inline const std::vector<Vertex>& neighbors(const Graph& g, Vertex v) { return g.neighbors(v); }

inline int connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (label[s - 1] >= 0) continue;
    label[s - 1] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (label[w - 1] < 0) {
          label[w - 1] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return count;
}

// m x n, row for edge (i,j) has +1 at column i and -1 at column j.
inline Eigen::MatrixXd incidence_matrix(const Graph& g) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(g.edge_count(), g.vertex_count());
  for (int r = 0; r < g.edge_count(); ++r) {
    const Edge& e = g.edges()[r];
    h(r, e.i - 1) = 1.0;
    h(r, e.j - 1) = -1.0;
  }
  return h;
}

// incidence_matrix(g) kron I_2
inline Eigen::MatrixXd expanded_incidence(const Graph& g) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * g.edge_count(), 2 * g.vertex_count());
  for (int r = 0; r < g.edge_count(); ++r) {
    const Edge& e = g.edges()[r];
    h.block<2, 2>(2 * r, 2 * (e.i - 1)).setIdentity();
    h.block<2, 2>(2 * r, 2 * (e.j - 1)) = -Eigen::Matrix2d::Identity();
  }
  return h;
}

// Vertex `vertex` is attached to both endpoints of the existing edge (i,j).
struct LamanStep {
  Vertex vertex = 0;
  Vertex i = 0;
  Vertex j = 0;

  friend bool operator==(const LamanStep&, const LamanStep&) = default;
};

// Insertion sequence starting from the base edge (1,2). steps[s] adds
// vertex s+3, so the resulting graph has steps.size()+2 vertices.
struct LamanConstruction {
  std::vector<LamanStep> steps;

  int vertex_count() const noexcept { return static_cast<int>(steps.size()) + 2; }

  friend bool operator==(const LamanConstruction&, const LamanConstruction&) = default;
};

inline Graph build_laman(const LamanConstruction& construction) {
  std::vector<Edge> edges{{1, 2}};
  const auto present = [&](Vertex a, Vertex b) {
    const Edge key{std::min(a, b), std::max(a, b)};
    return std::find(edges.begin(), edges.end(), key) != edges.end();
  };
  Vertex next = 3;
  for (const auto& step : construction.steps) {
    if (step.vertex != next) {
      throw InvalidStep("step adds vertex " + std::to_string(step.vertex) + ", expected " +
                        std::to_string(next));
    }
    if (step.i == step.j || step.i < 1 || step.j < 1 || step.i >= next || step.j >= next ||
        !present(step.i, step.j)) {
      throw InvalidStep("vertex " + std::to_string(step.vertex) + " attaches to (" +
                        std::to_string(step.i) + "," + std::to_string(step.j) +
                        "), which is not an existing edge");
    }
    edges.push_back({std::min(step.i, step.vertex), std::max(step.i, step.vertex)});
    edges.push_back({std::min(step.j, step.vertex), std::max(step.j, step.vertex)});
    ++next;
  }
  return Graph(construction.vertex_count(), std::move(edges));
}

// Inverse of build_laman. Vertex labels fix the insertion order, so the
// highest remaining label is peeled each round: it must have exactly two
// lower neighbors and those must be adjacent.
inline std::optional<LamanConstruction> recognize_triangulated_laman(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 2 || g.edge_count() != 2 * n - 3 || !g.has_edge(1, 2)) return std::nullopt;
  LamanConstruction out;
  out.steps.resize(static_cast<std::size_t>(n - 2));
  for (Vertex l = n; l >= 3; --l) {
    std::vector<Vertex> lower;
    for (Vertex w : g.neighbors(l)) {
      if (w < l) lower.push_back(w);
    }
    if (lower.size() != 2 || !g.has_edge(lower[0], lower[1])) return std::nullopt;
    out.steps[l - 3] = {l, lower[0], lower[1]};
  }
  return out;
}

struct LeaderPair {
  Vertex l1 = 0;
  Vertex l2 = 0;
};

// (H_l^T H_l) kron I_2 for the single leader edge.
inline Eigen::MatrixXd leader_laplacian(const Graph& g, const LeaderPair& leaders) {
  if (leaders.l1 == leaders.l2 || !g.has_edge(leaders.l1, leaders.l2)) {
    throw NotAnEdge("leader pair (" + std::to_string(leaders.l1) + "," +
                    std::to_string(leaders.l2) + ") is not an edge");
  }
  const int n = g.vertex_count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const int a = 2 * (leaders.l1 - 1);
  const int b = 2 * (leaders.l2 - 1);
  const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
  l.block<2, 2>(a, a) = eye;
  l.block<2, 2>(b, b) = eye;
  l.block<2, 2>(a, b) = -eye;
  l.block<2, 2>(b, a) = -eye;
  return l;
}

}  // namespace angle_rigidity
