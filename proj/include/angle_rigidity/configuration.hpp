#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/geometry.hpp"
#include "angle_rigidity/graph.hpp"

namespace angle_rigidity {

// Positions p_1..p_n stacked into one vector of length 2n. Vertex access is
// 1-based to match graph labels.
class Configuration {
 public:
  Configuration() = default;

  explicit Configuration(Eigen::VectorXd stacked) : p_(std::move(stacked)) { validate(); }

  explicit Configuration(const std::vector<Vector2>& points) : p_(2 * static_cast<Eigen::Index>(points.size())) {
    for (std::size_t v = 0; v < points.size(); ++v) p_.segment<2>(2 * static_cast<Eigen::Index>(v)) = points[v];
    validate();
  }

  int size() const noexcept { return static_cast<int>(p_.size() / 2); }

  Vector2 point(Vertex v) const { return p_.segment<2>(2 * (v - 1)); }
  void set_point(Vertex v, const Vector2& x) { p_.segment<2>(2 * (v - 1)) = x; }

  const Eigen::VectorXd& stacked() const noexcept { return p_; }

  std::vector<Vector2> points() const {
    std::vector<Vector2> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Vertex v = 1; v <= size(); ++v) out.push_back(point(v));
    return out;
  }

  Vector2 centroid() const {
    Vector2 c = Vector2::Zero();
    for (Vertex v = 1; v <= size(); ++v) c += point(v);
    return c / size();
  }

 private:
  void validate() const {
    if (p_.size() % 2 != 0) throw InvalidArgument("stacked configuration has odd length");
    if (p_.size() < 4) throw InvalidArgument("configuration needs at least two points");
    if (!p_.allFinite()) throw InvalidArgument("configuration has non-finite coordinates");
  }

  Eigen::VectorXd p_;
};

// c (I_n kron R) p + 1_n kron xi
inline Configuration similarity_transform(const Configuration& p, double scale, const Matrix2& orthogonal,
                                          const Vector2& translation) {
  Configuration out = p;
  for (Vertex v = 1; v <= p.size(); ++v) out.set_point(v, scale * orthogonal * p.point(v) + translation);
  return out;
}

}  // namespace angle_rigidity
