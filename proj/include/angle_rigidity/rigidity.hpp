#pragma once

// Distance, bearing and angle rigidity functions, their Jacobians, and
// rank-based infinitesimal rigidity verdicts.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "angle_rigidity/angle_index_set.hpp"
#include "angle_rigidity/configuration.hpp"
#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/geometry.hpp"
#include "angle_rigidity/graph.hpp"
#include "angle_rigidity/linalg.hpp"

namespace angle_rigidity {

inline constexpr double kEdgeEpsilon = 1e-9;
inline constexpr double kCollinearEpsilon = 1e-9;

inline double edge_length(const Configuration& p, Vertex i, Vertex j) {
  const double len = (p.point(i) - p.point(j)).norm();
  if (!(len > kEdgeEpsilon)) {
    throw CoincidentPoints("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }
  return len;
}

// Unit vector pointing from p_j to p_i.
inline Vector2 bearing(const Configuration& p, Vertex i, Vertex j) {
  return (p.point(i) - p.point(j)) / edge_length(p, i, j);
}

inline bool collinear(const Vector2& a, const Vector2& b) {
  return std::abs(a.dot(geometry::perp(b))) <= kCollinearEpsilon;
}

inline Eigen::VectorXd distance_rigidity_function(const Graph& g, const Configuration& p) {
  Eigen::VectorXd d(g.edge_count());
  for (int r = 0; r < g.edge_count(); ++r) {
    const auto& e = g.edges()[r];
    const double len = edge_length(p, e.i, e.j);
    d(r) = len * len;
  }
  return d;
}

inline Eigen::VectorXd bearing_rigidity_function(const Graph& g, const Configuration& p) {
  Eigen::VectorXd b(2 * g.edge_count());
  for (int r = 0; r < g.edge_count(); ++r) {
    const auto& e = g.edges()[r];
    b.segment<2>(2 * r) = bearing(p, e.i, e.j);
  }
  return b;
}

inline Eigen::VectorXd angle_rigidity_function(const Graph& g, const Configuration& p, const AngleIndexSet& t) {
  t.validate(g);
  Eigen::VectorXd f(t.size());
  int r = 0;
  for (const auto& tri : t) {
    f(r++) = std::clamp(bearing(p, tri.apex, tri.j).dot(bearing(p, tri.apex, tri.k)), -1.0, 1.0);
  }
  return f;
}

// d(||e_ij||^2)/dp: 2 e_ij^T at i, -2 e_ij^T at j.
inline Eigen::MatrixXd distance_rigidity_matrix(const Graph& g, const Configuration& p) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.edge_count(), 2 * g.vertex_count());
  for (int row = 0; row < g.edge_count(); ++row) {
    const auto& e = g.edges()[row];
    edge_length(p, e.i, e.j);
    const Vector2 eij = p.point(e.i) - p.point(e.j);
    r.block<1, 2>(row, 2 * (e.i - 1)) = 2.0 * eij.transpose();
    r.block<1, 2>(row, 2 * (e.j - 1)) = -2.0 * eij.transpose();
  }
  return r;
}

// diag(P_ij / ||e_ij||) * H_bar
inline Eigen::MatrixXd bearing_rigidity_matrix(const Graph& g, const Configuration& p) {
  const int m = g.edge_count();
  Eigen::MatrixXd scaled_projections = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int r = 0; r < m; ++r) {
    const auto& e = g.edges()[r];
    const double len = edge_length(p, e.i, e.j);
    scaled_projections.block<2, 2>(2 * r, 2 * r) = geometry::projection(bearing(p, e.i, e.j)) / len;
  }
  return scaled_projections * expanded_incidence(g);
}

// Row for (i,j,k) is eta^T R_B, where eta carries g_ik in the block of edge
// (i,j) and g_ij in the block of edge (i,k). Edge blocks of R_B are
// oriented low-to-high label, so a sign flips when i is the larger end.
inline Eigen::MatrixXd angle_rigidity_matrix(const Graph& g, const Configuration& p, const AngleIndexSet& t) {
  t.validate(g);
  const Eigen::MatrixXd rb = bearing_rigidity_matrix(g, p);
  Eigen::MatrixXd r(t.size(), 2 * g.vertex_count());
  int row = 0;
  for (const auto& tri : t) {
    const int eij = g.edge_index(tri.apex, tri.j);
    const int eik = g.edge_index(tri.apex, tri.k);
    const double sij = tri.apex < tri.j ? 1.0 : -1.0;
    const double sik = tri.apex < tri.k ? 1.0 : -1.0;
    const Vector2 gij = bearing(p, tri.apex, tri.j);
    const Vector2 gik = bearing(p, tri.apex, tri.k);
    r.row(row++) = sij * gik.transpose() * rb.middleRows<2>(2 * eij) +
                   sik * gij.transpose() * rb.middleRows<2>(2 * eik);
  }
  return r;
}

// Columns: x-translation, y-translation, scaling, rotation.
inline Eigen::MatrixXd trivial_motion_basis(const Configuration& p) {
  const int n = p.size();
  const Vector2 c = p.centroid();
  double spread = 0.0;
  for (Vertex v = 1; v <= n; ++v) spread = std::max(spread, (p.point(v) - c).norm());
  if (!(spread > kEdgeEpsilon)) throw DegenerateAllCoincident("all points coincide");
  Eigen::MatrixXd basis(2 * n, 4);
  for (Vertex v = 1; v <= n; ++v) {
    const int r = 2 * (v - 1);
    basis.block<2, 1>(r, 0) = Vector2(1.0, 0.0);
    basis.block<2, 1>(r, 1) = Vector2(0.0, 1.0);
    basis.block<2, 1>(r, 2) = p.point(v);
    basis.block<2, 1>(r, 3) = geometry::perp(p.point(v));
  }
  return basis;
}

struct RigidityReport {
  std::string kind;
  int rows = 0;
  int cols = 0;
  Eigen::VectorXd singular_values;
  int rank = 0;
  int nullspace_dim = 0;
  int expected_rank = 0;
  bool verdict = false;
  double tolerance = 0.0;
};

namespace detail {
inline RigidityReport make_report(std::string kind, const Eigen::MatrixXd& m, std::optional<double> tol) {
  const RankInfo info = numerical_rank(m, tol);
  RigidityReport rep;
  rep.kind = std::move(kind);
  rep.rows = static_cast<int>(m.rows());
  rep.cols = static_cast<int>(m.cols());
  rep.singular_values = info.singular_values;
  rep.rank = info.rank;
  rep.nullspace_dim = info.nullspace_dim;
  rep.tolerance = info.tolerance;
  return rep;
}
}  // namespace detail

inline RigidityReport is_infinitesimally_distance_rigid(const Graph& g, const Configuration& p,
                                                        std::optional<double> tol = std::nullopt) {
  auto rep = detail::make_report("distance", distance_rigidity_matrix(g, p), tol);
  rep.expected_rank = 2 * g.vertex_count() - 3;
  rep.verdict = rep.rank == rep.expected_rank;
  return rep;
}

inline RigidityReport is_infinitesimally_bearing_rigid(const Graph& g, const Configuration& p,
                                                       std::optional<double> tol = std::nullopt) {
  auto rep = detail::make_report("bearing", bearing_rigidity_matrix(g, p), tol);
  rep.expected_rank = 2 * g.vertex_count() - 3;
  rep.verdict = rep.rank == rep.expected_rank;
  return rep;
}

inline RigidityReport is_infinitesimally_angle_rigid(const Graph& g, const Configuration& p, const AngleIndexSet& t,
                                                     std::optional<double> tol = std::nullopt) {
  auto rep = detail::make_report("angle", angle_rigidity_matrix(g, p, t), tol);
  rep.expected_rank = 2 * g.vertex_count() - 4;
  rep.verdict = rep.nullspace_dim == 4;
  return rep;
}

// Every triangle (i<j<k) of g, in lexicographic order.
inline std::vector<std::array<Vertex, 3>> triangles(const Graph& g) {
  std::vector<std::array<Vertex, 3>> out;
  for (const auto& e : g.edges()) {
    for (Vertex k : g.neighbors(e.j)) {
      if (k > e.j && g.has_edge(e.i, k)) out.push_back({e.i, e.j, k});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct NondegeneracyReport {
  bool strongly_nondegenerate = true;
  std::optional<std::array<Vertex, 3>> witness;
};

inline NondegeneracyReport is_strongly_nondegenerate(const Graph& g, const Configuration& p) {
  NondegeneracyReport rep;
  for (const auto& tri : triangles(g)) {
    const Vector2 gij = bearing(p, tri[0], tri[1]);
    const Vector2 gik = bearing(p, tri[0], tri[2]);
    if (collinear(gij, gik)) {
      rep.strongly_nondegenerate = false;
      rep.witness = tri;
      return rep;
    }
  }
  return rep;
}

}  // namespace angle_rigidity
