#pragma once

// Shape-class membership (similarity up to O(2)), angle congruence, and the
// linearization spectrum of the gradient flows at an equilibrium.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "angle_rigidity/configuration.hpp"
#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/geometry.hpp"
#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/rigidity.hpp"

namespace angle_rigidity {

inline constexpr double kShapeTolerance = 1e-6;

// q ~ scale * (I kron orthogonal) p + 1 kron translation
struct SimilarityFit {
  bool member = false;
  double scale = 0.0;
  Matrix2 orthogonal = Matrix2::Identity();
  Vector2 translation = Vector2::Zero();
  bool reflected = false;
  double residual = 0.0;  // ||q - fit(p)|| / ||p - centroid(p)||
};

namespace detail {

// Best rotation angle taking the centered points `from` onto `to`.
inline double best_rotation(const std::vector<Vector2>& from, const std::vector<Vector2>& to) {
  double c = 0.0;
  double s = 0.0;
  for (std::size_t v = 0; v < from.size(); ++v) {
    c += from[v].dot(to[v]);
    s += geometry::cross(from[v], to[v]);
  }
  return std::atan2(s, c);
}

}  // namespace detail

inline SimilarityFit shape_class_membership(const Configuration& p, const Configuration& q,
                                            double tolerance = kShapeTolerance) {
  if (p.size() != q.size()) throw InvalidArgument("configurations differ in size");
  const Vector2 pc = p.centroid();
  const Vector2 qc = q.centroid();
  std::vector<Vector2> a;
  std::vector<Vector2> b;
  double spread_sq = 0.0;
  for (Vertex v = 1; v <= p.size(); ++v) {
    a.push_back(p.point(v) - pc);
    b.push_back(q.point(v) - qc);
    spread_sq += a.back().squaredNorm();
  }
  if (!(std::sqrt(spread_sq) > kEdgeEpsilon)) throw DegenerateAllCoincident("reference configuration collapses to a point");

  SimilarityFit best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const bool reflect : {false, true}) {
    std::vector<Vector2> src = a;
    if (reflect) {
      for (auto& x : src) x = geometry::flip() * x;
    }
    const double theta = detail::best_rotation(src, b);
    const Matrix2 orth = reflect ? geometry::reflection(theta) : geometry::rotation(theta);
    double num = 0.0;
    for (std::size_t v = 0; v < a.size(); ++v) num += b[v].dot(orth * a[v]);
    const double scale = num / spread_sq;
    double err_sq = 0.0;
    for (std::size_t v = 0; v < a.size(); ++v) err_sq += (b[v] - scale * orth * a[v]).squaredNorm();
    const double residual = std::sqrt(err_sq / spread_sq);
    if (residual < best.residual) {
      best.residual = residual;
      best.scale = scale;
      best.orthogonal = orth;
      best.reflected = reflect;
      best.translation = qc - scale * orth * pc;
    }
  }
  best.member = best.residual < tolerance && std::abs(best.scale) > 1e-12;
  return best;
}

// Compares the cosines of every angle of the complete graph.
inline bool angle_congruence_check(const Configuration& p, const Configuration& q, double tolerance = 1e-9) {
  if (p.size() != q.size()) throw InvalidArgument("configurations differ in size");
  const Graph k = complete_graph(p.size());
  const AngleIndexSet all = full_angle_set(k);
  const Eigen::VectorXd fp = angle_rigidity_function(k, p, all);
  const Eigen::VectorXd fq = angle_rigidity_function(k, q, all);
  return fp.size() == 0 || (fp - fq).cwiseAbs().maxCoeff() <= tolerance;
}

struct LeaderTarget {
  LeaderPair leaders;
  Vector2 displacement = Vector2::Zero();  // target p_l1 - p_l2
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns match eigenvalues

  int count_near_zero(double tol) const {
    int c = 0;
    for (Eigen::Index s = 0; s < eigenvalues.size(); ++s) c += std::abs(eigenvalues(s)) < tol ? 1 : 0;
    return c;
  }

  // Eigenvectors whose eigenvalue magnitude is below tol.
  Eigen::MatrixXd near_zero_vectors(double tol) const {
    Eigen::MatrixXd out(eigenvectors.rows(), count_near_zero(tol));
    Eigen::Index c = 0;
    for (Eigen::Index s = 0; s < eigenvalues.size(); ++s) {
      if (std::abs(eigenvalues(s)) < tol) out.col(c++) = eigenvectors.col(s);
    }
    return out;
  }
};

inline constexpr double kEquilibriumTolerance = 1e-9;

// Eigen-decomposition of -(R^T R) or -(R^T R + L_l kron I_2) at an
// equilibrium p_eq of the flow targeting p_target.
inline Spectrum jacobian_spectrum(const Graph& g, const Configuration& p_eq, const AngleIndexSet& t,
                                  const Configuration& p_target,
                                  const std::optional<LeaderTarget>& maneuver = std::nullopt) {
  const Eigen::VectorXd delta = angle_rigidity_function(g, p_eq, t) - angle_rigidity_function(g, p_target, t);
  if (delta.size() > 0 && delta.cwiseAbs().maxCoeff() >= kEquilibriumTolerance) {
    throw NotAnEquilibrium("angle residual " + std::to_string(delta.cwiseAbs().maxCoeff()));
  }
  const Eigen::MatrixXd r = angle_rigidity_matrix(g, p_eq, t);
  Eigen::MatrixXd j = -(r.transpose() * r);
  if (maneuver) {
    const Vector2 d = p_eq.point(maneuver->leaders.l1) - p_eq.point(maneuver->leaders.l2);
    if ((d - maneuver->displacement).norm() >= kEquilibriumTolerance) {
      throw NotAnEquilibrium("leader displacement off target by " +
                             std::to_string((d - maneuver->displacement).norm()));
    }
    j -= leader_laplacian(g, maneuver->leaders);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace angle_rigidity
