#pragma once

// Distributed angle-based formation control: the shape-stabilizing gradient
// controller, the leader-based orientation/scale maneuver, a fixed-step RK4
// integrator, and the diagnostics evaluated along trajectories.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "angle_rigidity/angle_index_set.hpp"
#include "angle_rigidity/configuration.hpp"
#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/geometry.hpp"
#include "angle_rigidity/graph.hpp"
#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/rigidity.hpp"
#include "angle_rigidity/shape.hpp"

namespace angle_rigidity {

struct LamanWitnessReport {
  bool checked = false;  // a Laman witness was supplied
  bool edges_subset = false;
  bool nondegenerate = false;
  std::optional<std::array<Vertex, 3>> degenerate_triangle;
  bool holds() const { return checked && edges_subset && nondegenerate; }
};

class FormationSpec {
 public:
  // `angles` defaults to triangle_formation_set(graph).
  FormationSpec(Graph graph, Configuration target, std::optional<AngleIndexSet> angles = std::nullopt,
                std::optional<LeaderTarget> maneuver = std::nullopt,
                std::optional<LamanConstruction> laman_witness = std::nullopt)
      : graph_(std::move(graph)),
        target_(std::move(target)),
        angles_(angles ? std::move(*angles) : triangle_formation_set(graph_)),
        maneuver_(std::move(maneuver)),
        witness_(std::move(laman_witness)) {
    if (target_.size() != graph_.vertex_count()) {
      throw InvalidArgument("target has " + std::to_string(target_.size()) + " points for " +
                            std::to_string(graph_.vertex_count()) + " vertices");
    }
    angles_.validate(graph_);
    if (maneuver_) leader_laplacian(graph_, maneuver_->leaders);
    target_cosines_ = angle_rigidity_function(graph_, target_, angles_);
    build_roles();
  }

  const Graph& graph() const noexcept { return graph_; }
  const Configuration& target() const noexcept { return target_; }
  const AngleIndexSet& angles() const noexcept { return angles_; }
  const std::optional<LeaderTarget>& maneuver() const noexcept { return maneuver_; }
  const std::optional<LamanConstruction>& laman_witness() const noexcept { return witness_; }
  const Eigen::VectorXd& target_cosines() const noexcept { return target_cosines_; }
  int agent_count() const noexcept { return graph_.vertex_count(); }

  // Indices into angles() of the triples where agent v is the apex, and
  // where it is one of the two wings.
  const std::vector<int>& apex_triples(Vertex v) const { return apex_roles_[v - 1]; }
  const std::vector<int>& wing_triples(Vertex v) const { return wing_roles_[v - 1]; }

  LamanWitnessReport laman_witness_check() const {
    LamanWitnessReport rep;
    if (!witness_) return rep;
    rep.checked = true;
    const Graph laman = build_laman(*witness_);
    if (laman.vertex_count() != graph_.vertex_count()) return rep;
    rep.edges_subset = true;
    for (const auto& e : laman.edges()) rep.edges_subset = rep.edges_subset && graph_.has_edge(e.i, e.j);
    const auto nd = is_strongly_nondegenerate(laman, target_);
    rep.nondegenerate = nd.strongly_nondegenerate;
    rep.degenerate_triangle = nd.witness;
    return rep;
  }

 private:
  void build_roles() {
    apex_roles_.assign(static_cast<std::size_t>(agent_count()), {});
    wing_roles_.assign(static_cast<std::size_t>(agent_count()), {});
    int idx = 0;
    for (const auto& t : angles_) {
      apex_roles_[t.apex - 1].push_back(idx);
      wing_roles_[t.j - 1].push_back(idx);
      wing_roles_[t.k - 1].push_back(idx);
      ++idx;
    }
  }

  Graph graph_;
  Configuration target_;
  AngleIndexSet angles_;
  std::optional<LeaderTarget> maneuver_;
  std::optional<LamanConstruction> witness_;
  Eigen::VectorXd target_cosines_;
  std::vector<std::vector<int>> apex_roles_;
  std::vector<std::vector<int>> wing_roles_;
};

// f_T(p) - f_T(p*)
inline Eigen::VectorXd residual(const FormationSpec& spec, const Configuration& p) {
  return angle_rigidity_function(spec.graph(), p, spec.angles()) - spec.target_cosines();
}

inline double cost_VF(const FormationSpec& spec, const Configuration& p) { return 0.5 * residual(spec, p).squaredNorm(); }

inline const LeaderTarget& require_maneuver(const FormationSpec& spec) {
  if (!spec.maneuver()) throw NoManeuverTarget("formation has no leader maneuver");
  return *spec.maneuver();
}

inline Vector2 leader_displacement_error(const FormationSpec& spec, const Configuration& p) {
  const auto& m = require_maneuver(spec);
  return p.point(m.leaders.l1) - p.point(m.leaders.l2) - m.displacement;
}

inline double cost_VM(const FormationSpec& spec, const Configuration& p) {
  return 0.5 * leader_displacement_error(spec, p).squaredNorm();
}

// p~ = c R(theta) p*, with c and theta fixed by the leader displacement.
inline Configuration maneuver_target_configuration(const FormationSpec& spec) {
  const auto& m = require_maneuver(spec);
  const Vector2 ref = spec.target().point(m.leaders.l1) - spec.target().point(m.leaders.l2);
  const std::complex<double> factor = std::complex<double>(m.displacement.x(), m.displacement.y()) /
                                      std::complex<double>(ref.x(), ref.y());
  return similarity_transform(spec.target(), std::abs(factor), geometry::rotation(std::arg(factor)), Vector2::Zero());
}

struct ControlField {
  std::vector<Vector2> per_agent;  // u_i from each agent's own apex/wing sums
  Eigen::VectorXd stacked;         // per_agent stacked
  Eigen::VectorXd compact;         // -R_T^T delta
  double max_discrepancy = 0.0;
};

namespace detail {

// Agent i sums y1 over triples where it is the apex and y2 over triples
// where it is a wing. Only relative positions of neighbors are used.
inline Vector2 agent_velocity(const FormationSpec& spec, const Configuration& p, Vertex i,
                              const Eigen::VectorXd& delta) {
  const auto& tris = spec.angles().triples();
  Vector2 u = Vector2::Zero();
  for (int idx : spec.apex_triples(i)) {
    const Triple& t = tris[idx];
    const double lij = edge_length(p, i, t.j);
    const double lik = edge_length(p, i, t.k);
    const Vector2 gij = bearing(p, i, t.j);
    const Vector2 gik = bearing(p, i, t.k);
    u -= delta(idx) * (geometry::projection(gij) * gik / lij + geometry::projection(gik) * gij / lik);
  }
  for (int idx : spec.wing_triples(i)) {
    const Triple& t = tris[idx];
    const Vertex apex = t.apex;
    const Vertex other = t.j == i ? t.k : t.j;
    const double lij = edge_length(p, i, apex);
    const Vector2 gij = bearing(p, i, apex);
    const Vector2 g_other_apex = bearing(p, other, apex);
    u -= delta(idx) * geometry::projection(gij) * g_other_apex / lij;
  }
  return u;
}

}  // namespace detail

inline Eigen::VectorXd velocity_uF(const FormationSpec& spec, const Configuration& p) {
  const Eigen::VectorXd delta = residual(spec, p);
  Eigen::VectorXd u(2 * spec.agent_count());
  for (Vertex i = 1; i <= spec.agent_count(); ++i) u.segment<2>(2 * (i - 1)) = detail::agent_velocity(spec, p, i, delta);
  return u;
}

inline ControlField control_uF(const FormationSpec& spec, const Configuration& p) {
  ControlField field;
  const Eigen::VectorXd delta = residual(spec, p);
  field.stacked.resize(2 * spec.agent_count());
  for (Vertex i = 1; i <= spec.agent_count(); ++i) {
    field.per_agent.push_back(detail::agent_velocity(spec, p, i, delta));
    field.stacked.segment<2>(2 * (i - 1)) = field.per_agent.back();
  }
  field.compact = -angle_rigidity_matrix(spec.graph(), p, spec.angles()).transpose() * delta;
  field.max_discrepancy = (field.stacked - field.compact).cwiseAbs().maxCoeff();
  return field;
}

// u^F - (L_l kron I_2)(p - p~); the leader term only touches l1 and l2.
inline Eigen::VectorXd velocity_uM(const FormationSpec& spec, const Configuration& p) {
  const auto& m = require_maneuver(spec);
  Eigen::VectorXd u = velocity_uF(spec, p);
  const Vector2 err = leader_displacement_error(spec, p);
  u.segment<2>(2 * (m.leaders.l1 - 1)) -= err;
  u.segment<2>(2 * (m.leaders.l2 - 1)) += err;
  return u;
}

inline Eigen::VectorXd control_uM(const FormationSpec& spec, const Configuration& p) { return velocity_uM(spec, p); }

struct Monitors {
  Vector2 centroid = Vector2::Zero();
  double scale = 0.0;  // root-mean-square distance to the centroid
};

inline Monitors monitors(const Configuration& p) {
  Monitors m;
  m.centroid = p.centroid();
  double acc = 0.0;
  for (Vertex v = 1; v <= p.size(); ++v) acc += (p.point(v) - m.centroid).squaredNorm();
  m.scale = std::sqrt(acc / p.size());
  return m;
}

// Max deviation between u^F(c R p + xi) and c^-1 R u^F(p).
inline double equivariance_check(const FormationSpec& spec, const Configuration& p, double scale,
                                 const Matrix2& orthogonal, const Vector2& translation) {
  const Eigen::VectorXd u = velocity_uF(spec, p);
  const Eigen::VectorXd ut = velocity_uF(spec, similarity_transform(p, scale, orthogonal, translation));
  double worst = 0.0;
  for (Vertex v = 1; v <= spec.agent_count(); ++v) {
    const Vector2 expected = orthogonal * u.segment<2>(2 * (v - 1)) / scale;
    worst = std::max(worst, (ut.segment<2>(2 * (v - 1)) - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline bool degenerate_freeze_check(const FormationSpec& spec, const Configuration& p0, double tol = 1e-12) {
  return velocity_uF(spec, p0).cwiseAbs().maxCoeff() <= tol;
}

struct Membership {
  bool in_EF = false;
  bool in_shape_class = false;
  std::optional<bool> in_EM;
  double max_residual = 0.0;
  SimilarityFit fit;
};

inline constexpr double kEquilibriumSetTolerance = 1e-8;

inline Membership equilibrium_membership(const FormationSpec& spec, const Configuration& p,
                                         double shape_tolerance = kShapeTolerance) {
  Membership out;
  const Eigen::VectorXd delta = residual(spec, p);
  out.max_residual = delta.size() ? delta.cwiseAbs().maxCoeff() : 0.0;
  out.in_EF = out.max_residual < kEquilibriumSetTolerance;
  out.fit = shape_class_membership(spec.target(), p, shape_tolerance);
  out.in_shape_class = out.fit.member;
  if (spec.maneuver()) {
    const Configuration tilde = maneuver_target_configuration(spec);
    const Vector2 shift = p.centroid() - tilde.centroid();
    double worst = 0.0;
    for (Vertex v = 1; v <= p.size(); ++v) worst = std::max(worst, (p.point(v) - tilde.point(v) - shift).cwiseAbs().maxCoeff());
    out.in_EM = worst < kEquilibriumSetTolerance;
  }
  return out;
}

// Least-squares slope of log V over the samples with V > 1e-14; returns
// gamma with V(t) ~ V(0) exp(-gamma t).
inline double decay_rate_fit(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size()) throw InvalidArgument("time and value series differ in length");
  if (values.empty() || !(values.front() > 0.0)) throw NonPositiveSeries("series must start positive");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  double count = 0.0;
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (!(values[s] > 1e-14)) continue;
    const double y = std::log(values[s]);
    st += times[s];
    sy += y;
    stt += times[s] * times[s];
    sty += times[s] * y;
    count += 1.0;
  }
  if (count < 2.0) return 0.0;
  const double denom = count * stt - st * st;
  if (denom == 0.0) return 0.0;
  return -(count * sty - st * sy) / denom;
}

struct IntegratorConfig {
  double step = 1e-3;
  double t_final = 50.0;
  double record_stride = 0.1;
  double cost_threshold = 1e-14;
  double gradient_threshold = 1e-10;
};

struct SimulationResult {
  std::vector<double> times;
  std::vector<Configuration> positions;
  std::vector<double> cost_F;
  std::vector<double> cost_M;  // zeros without a maneuver
  std::vector<double> cost_total;
  std::vector<Vector2> centroids;
  std::vector<double> scales;
  std::vector<double> residual_norms;
  bool converged_early = false;
  Membership final_membership;
  std::optional<double> final_displacement_error;
  double decay_rate = 0.0;

  const Configuration& final_configuration() const { return positions.back(); }
};

inline constexpr double kBlowUpLimit = 1e9;

// Classical RK4 on p' = u(p), with u = u^M when the spec carries a leader
// maneuver and u^F otherwise.
inline SimulationResult simulate(const FormationSpec& spec, const Configuration& p0,
                                 const IntegratorConfig& config = {}) {
  if (!(config.step > 0.0) || !(config.t_final > 0.0) || !(config.record_stride > 0.0)) {
    throw InvalidArgument("integrator step, horizon and stride must be positive");
  }
  if (p0.size() != spec.agent_count()) throw InvalidArgument("initial configuration size mismatch");
  const bool maneuver = spec.maneuver().has_value();
  double t = 0.0;

  const auto field = [&](const Eigen::VectorXd& x) {
    try {
      const Configuration c(x);
      return maneuver ? velocity_uM(spec, c) : velocity_uF(spec, c);
    } catch (const CoincidentPoints& e) {
      throw BlowUp(std::string("adjacent agents collided: ") + e.what(), t);
    } catch (const InvalidArgument& e) {
      throw BlowUp(std::string("state became invalid: ") + e.what(), t);
    }
  };

  SimulationResult out;
  Eigen::VectorXd x = p0.stacked();
  const auto record = [&](double time, const Eigen::VectorXd& state) {
    const Configuration c(state);
    const Eigen::VectorXd delta = residual(spec, c);
    const double vf = 0.5 * delta.squaredNorm();
    const double vm = maneuver ? cost_VM(spec, c) : 0.0;
    const Monitors mon = monitors(c);
    out.times.push_back(time);
    out.positions.push_back(c);
    out.cost_F.push_back(vf);
    out.cost_M.push_back(vm);
    out.cost_total.push_back(vf + vm);
    out.centroids.push_back(mon.centroid);
    out.scales.push_back(mon.scale);
    out.residual_norms.push_back(delta.norm());
    return vf + vm;
  };

  const auto steps_total = static_cast<long long>(std::llround(config.t_final / config.step));
  const auto record_every = std::max(1LL, static_cast<long long>(std::llround(config.record_stride / config.step)));
  record(0.0, x);

  for (long long s = 1; s <= steps_total; ++s) {
    const double h = config.step;
    const Eigen::VectorXd k1 = field(x);
    const Eigen::VectorXd k2 = field(x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = field(x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = field(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = static_cast<double>(s) * h;

    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kBlowUpLimit) {
      throw BlowUp("state left the admissible region", t);
    }
    for (const auto& e : spec.graph().edges()) {
      if (!((x.segment<2>(2 * (e.i - 1)) - x.segment<2>(2 * (e.j - 1))).norm() > kEdgeEpsilon)) {
        throw BlowUp("agents " + std::to_string(e.i) + " and " + std::to_string(e.j) + " collided", t);
      }
    }

    if (s % record_every == 0 || s == steps_total) {
      const double cost = record(t, x);
      if (cost < config.cost_threshold && field(x).norm() < config.gradient_threshold) {
        out.converged_early = s != steps_total;
        break;
      }
    }
  }

  const Configuration& final = out.positions.back();
  out.final_membership = equilibrium_membership(spec, final);
  if (maneuver) out.final_displacement_error = leader_displacement_error(spec, final).norm();
  out.decay_rate = out.cost_total.front() > 0.0 ? decay_rate_fit(out.times, out.cost_total) : 0.0;
  return out;
}

}  // namespace angle_rigidity
