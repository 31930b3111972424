#pragma once

// Property suites run by `angle_rigidity selftest`. Each suite samples with a
// fixed seed, so repeated runs give identical results.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "angle_rigidity/formation.hpp"
#include "angle_rigidity/geometry.hpp"
#include "angle_rigidity/graph.hpp"
#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/linalg.hpp"
#include "angle_rigidity/random.hpp"
#include "angle_rigidity/rigidity.hpp"
#include "angle_rigidity/shape.hpp"

namespace angle_rigidity::selftest {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  double max_error = 0.0;
  bool passed() const { return failures == 0 && checks > 0; }
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void check(bool ok) {
    ++result_.checks;
    if (!ok) ++result_.failures;
  }

  // Passes when err < limit; err feeds max_error.
  void within(double err, double limit) {
    result_.max_error = std::max(result_.max_error, err);
    check(err < limit);
  }

  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

inline Eigen::MatrixXd central_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, double h = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Eigen::VectorXd a = x, b = x;
    a(c) += h;
    b(c) -= h;
    jac.col(c) = (f(a) - f(b)) / (2.0 * h);
  }
  return jac;
}

inline Vector2 random_unit(Rng& rng) {
  const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return {std::cos(a), std::sin(a)};
}

inline FormationSpec pentagon_spec() {
  const LamanConstruction fan{{{3, 1, 2}, {4, 1, 3}, {5, 1, 4}}};
  return FormationSpec(build_laman(fan), regular_polygon(5), std::nullopt, std::nullopt, fan);
}

// Random framework on a random triangulated Laman graph, resampled until
// strongly nondegenerate.
inline std::pair<LamanConstruction, Configuration> random_laman_framework(int n, Rng& rng) {
  const LamanConstruction c = random_laman_construction(n, rng);
  const Graph g = build_laman(c);
  for (;;) {
    Configuration p = random_configuration(n, rng);
    bool ok = true;
    for (const auto& tri : triangles(g)) {
      const Vector2 a = p.point(tri[1]) - p.point(tri[0]);
      const Vector2 b = p.point(tri[2]) - p.point(tri[0]);
      ok = ok && std::abs(geometry::cross(a, b)) > 1e-3;
    }
    if (ok) return {c, p};
  }
}

}  // namespace detail

inline SuiteResult rotation_orthogonality() {
  detail::Recorder rec("geometry.rotation_orthogonality");
  Rng rng(101);
  for (int s = 0; s < 50; ++s) {
    const Matrix2 r = geometry::rotation(rng.uniform(-10.0, 10.0));
    rec.within((r.transpose() * r - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    rec.within(std::abs(r.determinant() - 1.0), 1e-12);
    const Matrix2 f = geometry::reflection(rng.uniform(-10.0, 10.0));
    rec.within(std::abs(f.determinant() + 1.0), 1e-12);
    rec.within((f * f - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
  return rec.result();
}

inline SuiteResult householder_involution() {
  detail::Recorder rec("geometry.householder_involution");
  Rng rng(102);
  for (int s = 0; s < 50; ++s) {
    const Matrix2 h = geometry::householder(detail::random_unit(rng));
    rec.within((h * h - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    rec.within((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    rec.within(std::abs(h.determinant() + 1.0), 1e-12);
  }
  return rec.result();
}

inline SuiteResult householder_reflection_equivalence() {
  detail::Recorder rec("geometry.householder_is_reflection");
  Rng rng(103);
  for (int s = 0; s < 20; ++s) {
    const Vector2 x = detail::random_unit(rng);
    const Matrix2 h = geometry::householder(x);
    const double theta = std::atan2(h(1, 0), h(0, 0));
    rec.within((geometry::reflection(theta) - h).cwiseAbs().maxCoeff(), 1e-12);
  }
  return rec.result();
}

inline SuiteResult householder_eigenvectors() {
  detail::Recorder rec("geometry.householder_eigenvectors");
  Rng rng(104);
  for (int s = 0; s < 50; ++s) {
    const Vector2 x = detail::random_unit(rng);
    const Matrix2 h = geometry::householder(x);
    rec.within((h * geometry::perp(x) - geometry::perp(x)).norm(), 1e-12);
    rec.within((h * x + x).norm(), 1e-12);
  }
  return rec.result();
}

inline SuiteResult projection_spectrum() {
  detail::Recorder rec("geometry.projection_spectrum");
  Rng rng(105);
  for (int s = 0; s < 50; ++s) {
    const Matrix2 p = geometry::projection(detail::random_unit(rng));
    Eigen::SelfAdjointEigenSolver<Matrix2> es(p);
    rec.within(std::abs(es.eigenvalues()(0)), 1e-10);
    rec.within(std::abs(es.eigenvalues()(1) - 1.0), 1e-10);
    rec.within((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
  }
  return rec.result();
}

inline SuiteResult incidence_rank() {
  detail::Recorder rec("graph.incidence_rank");
  Rng rng(201);
  for (int s = 0; s < 50; ++s) {
    const int n = 2 + static_cast<int>(rng.index(8));
    std::vector<Edge> edges;
    for (Vertex a = 1; a <= n; ++a) {
      for (Vertex b = a + 1; b <= n; ++b) {
        if (rng.uniform01() < 0.3) edges.push_back({a, b});
      }
    }
    const Graph g(n, edges);
    rec.check(numerical_rank(incidence_matrix(g)).rank == n - connected_components(g));
  }
  return rec.result();
}

inline SuiteResult laman_roundtrip() {
  detail::Recorder rec("graph.laman_roundtrip");
  Rng rng(202);
  for (int s = 0; s < 50; ++s) {
    const int n = 3 + static_cast<int>(rng.index(10));
    const Graph g = build_laman(random_laman_construction(n, rng));
    const auto back = recognize_triangulated_laman(g);
    rec.check(back.has_value() && build_laman(*back) == g);
    rec.check(g.edge_count() == 2 * n - 3);
  }
  return rec.result();
}

inline SuiteResult bearing_gradient() {
  detail::Recorder rec("rigidity.bearing_matrix_vs_fd");
  Rng rng(301);
  for (int s = 0; s < 30; ++s) {
    const int n = 3 + static_cast<int>(rng.index(5));
    const Graph g = random_connected_graph(n, static_cast<int>(rng.index(static_cast<std::size_t>(n))), rng);
    const Configuration p = random_configuration(n, rng);
    const auto fd = detail::central_jacobian(
        [&](const Eigen::VectorXd& x) { return bearing_rigidity_function(g, Configuration(x)); }, p.stacked());
    const Eigen::MatrixXd r = bearing_rigidity_matrix(g, p);
    rec.within((fd - r).norm() / r.norm(), 1e-5);
  }
  return rec.result();
}

inline SuiteResult angle_gradient() {
  detail::Recorder rec("rigidity.angle_matrix_vs_fd");
  Rng rng(302);
  for (int s = 0; s < 30; ++s) {
    const int n = 3 + static_cast<int>(rng.index(5));
    const Graph g = random_connected_graph(n, 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n))), rng);
    const AngleIndexSet t = full_angle_set(g);
    const Configuration p = random_configuration(n, rng);
    const auto fd = detail::central_jacobian(
        [&](const Eigen::VectorXd& x) { return angle_rigidity_function(g, Configuration(x), t); }, p.stacked());
    const Eigen::MatrixXd r = angle_rigidity_matrix(g, p, t);
    rec.within((fd - r).norm() / std::max(r.norm(), 1e-12), 1e-5);
  }
  return rec.result();
}

inline SuiteResult angle_iff_bearing() {
  detail::Recorder rec("rigidity.iar_iff_ibr");
  Rng rng(303);
  for (int s = 0; s < 100; ++s) {
    const int n = 3 + static_cast<int>(rng.index(6));
    const Graph g = random_connected_graph(n, static_cast<int>(rng.index(static_cast<std::size_t>(n + 1))), rng);
    const Configuration p = random_configuration(n, rng);
    rec.check(is_infinitesimally_angle_rigid(g, p, full_angle_set(g)).verdict ==
              is_infinitesimally_bearing_rigid(g, p).verdict);
  }
  return rec.result();
}

inline SuiteResult laman_rank() {
  detail::Recorder rec("rigidity.laman_minimal_rank");
  Rng rng(304);
  for (int n = 3; n <= 10; ++n) {
    for (int s = 0; s < 5; ++s) {
      const auto [c, p] = detail::random_laman_framework(n, rng);
      const auto rep = is_infinitesimally_angle_rigid(build_laman(c), p, laman_minimal_set(c));
      rec.check(rep.rank == 2 * n - 4 && rep.nullspace_dim == 4);
    }
  }
  return rec.result();
}

inline SuiteResult angle_similarity_invariance() {
  detail::Recorder rec("rigidity.similarity_invariance");
  Rng rng(305);
  for (int s = 0; s < 30; ++s) {
    const int n = 3 + static_cast<int>(rng.index(5));
    const Graph g = random_connected_graph(n, static_cast<int>(rng.index(static_cast<std::size_t>(n))), rng);
    const AngleIndexSet t = full_angle_set(g);
    const Configuration p = random_configuration(n, rng);
    const double c = rng.uniform(0.2, 5.0) * (rng.uniform01() < 0.5 ? -1.0 : 1.0);
    const double theta = rng.uniform(0.0, 6.0);
    const Matrix2 o = rng.uniform01() < 0.5 ? geometry::rotation(theta) : geometry::reflection(theta);
    const Configuration q = similarity_transform(p, c, o, {rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const Eigen::VectorXd diff = angle_rigidity_function(g, q, t) - angle_rigidity_function(g, p, t);
    rec.within(diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0, 1e-10);
  }
  return rec.result();
}

inline SuiteResult algorithm1_suitability() {
  detail::Recorder rec("index_sets.algorithm1_suitable");
  Rng rng(401);
  int done = 0;
  while (done < 30) {
    const int n = 3 + static_cast<int>(rng.index(6));
    const Graph g = random_connected_graph(n, n - 2 + static_cast<int>(rng.index(static_cast<std::size_t>(n))), rng);
    const Configuration p = random_configuration(n, rng);
    if (!is_infinitesimally_angle_rigid(g, p, full_angle_set(g)).verdict) continue;
    const AngleIndexSet t = algorithm1_set(g, p, SelectionPolicy::seeded(rng.next()));
    rec.check(is_infinitesimally_angle_rigid(g, p, t).nullspace_dim == 4);
    ++done;
  }
  return rec.result();
}

inline SuiteResult laman_minimality() {
  detail::Recorder rec("index_sets.laman_minimality");
  Rng rng(402);
  for (int n = 3; n <= 8; ++n) {
    const auto [c, p] = detail::random_laman_framework(n, rng);
    const Graph g = build_laman(c);
    const AngleIndexSet t = laman_minimal_set(c);
    for (std::size_t k = 0; k < t.triples().size(); ++k) {
      rec.check(is_infinitesimally_angle_rigid(g, p, t.without(k)).nullspace_dim > 4);
    }
  }
  return rec.result();
}

inline SuiteResult control_gradient() {
  detail::Recorder rec("formation.control_vs_fd_gradient");
  const FormationSpec spec = detail::pentagon_spec();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Configuration p = perturb(spec.target(), 0.4, seed);
    const Eigen::VectorXd u = velocity_uF(spec, p);
    Eigen::VectorXd fd(u.size());
    for (Eigen::Index c = 0; c < u.size(); ++c) {
      Eigen::VectorXd a = p.stacked(), b = p.stacked();
      a(c) += 1e-6;
      b(c) -= 1e-6;
      fd(c) = -(cost_VF(spec, Configuration(a)) - cost_VF(spec, Configuration(b))) / 2e-6;
    }
    rec.within((fd - u).norm() / std::max(u.norm(), 1e-12), 1e-5);
  }
  return rec.result();
}

inline SuiteResult control_dual_form() {
  detail::Recorder rec("formation.per_agent_vs_compact");
  const FormationSpec spec = detail::pentagon_spec();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    rec.within(control_uF(spec, perturb(spec.target(), 0.5, seed)).max_discrepancy, 1e-10);
  }
  return rec.result();
}

inline SuiteResult control_equivariance() {
  detail::Recorder rec("formation.equivariance");
  const FormationSpec spec = detail::pentagon_spec();
  Rng rng(501);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Configuration p = perturb(spec.target(), 0.4, seed);
    const double c = rng.uniform(0.3, 3.0);
    const double theta = rng.uniform(0.0, 6.0);
    const Matrix2 o = seed % 2 ? geometry::rotation(theta) : geometry::reflection(theta);
    rec.within(equivariance_check(spec, p, c, o, {rng.uniform(-5, 5), rng.uniform(-5, 5)}), 1e-9);
  }
  return rec.result();
}

inline SuiteResult field_invariants() {
  detail::Recorder rec("formation.centroid_scale_field");
  const FormationSpec spec = detail::pentagon_spec();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Configuration p = perturb(spec.target(), 0.5, seed);
    const Eigen::VectorXd u = velocity_uF(spec, p);
    Vector2 sum = Vector2::Zero();
    double radial = 0.0;
    const Vector2 c = p.centroid();
    for (Vertex v = 1; v <= p.size(); ++v) {
      sum += u.segment<2>(2 * (v - 1));
      radial += u.segment<2>(2 * (v - 1)).dot(p.point(v) - c);
    }
    rec.within(sum.cwiseAbs().maxCoeff(), 1e-12);
    rec.within(std::abs(radial), 1e-10);
  }
  return rec.result();
}

inline SuiteResult degenerate_freeze() {
  detail::Recorder rec("formation.degenerate_freeze");
  const FormationSpec spec = detail::pentagon_spec();
  Rng rng(502);
  for (int s = 0; s < 20; ++s) {
    const Vector2 origin(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Vector2 dir = detail::random_unit(rng);
    std::vector<Vector2> pts;
    for (int v = 0; v < 5; ++v) pts.push_back(origin + (v + 1) * rng.uniform(0.5, 1.5) * dir);
    rec.check(degenerate_freeze_check(spec, Configuration(pts)));
  }
  return rec.result();
}

inline std::vector<SuiteResult> run_all() {
  return {rotation_orthogonality(), householder_involution(), householder_reflection_equivalence(),
          householder_eigenvectors(), projection_spectrum(), incidence_rank(), laman_roundtrip(),
          bearing_gradient(), angle_gradient(), angle_iff_bearing(), laman_rank(), angle_similarity_invariance(),
          algorithm1_suitability(), laman_minimality(), control_gradient(), control_dual_form(),
          control_equivariance(), field_invariants(), degenerate_freeze()};
}

}  // namespace angle_rigidity::selftest
