#pragma once

// Planar primitives: rotations, reflections, Householder reflectors and
// projections onto the orthogonal complement of a direction.

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "angle_rigidity/errors.hpp"

namespace angle_rigidity {

using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

namespace geometry {

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kRenormalizeLimit = 1e-9;

// Returns x scaled to unit length. Deviations up to kRenormalizeLimit are
// corrected silently; anything larger is rejected.
inline Vector2 checked_unit(const Vector2& x) {
  const double norm = x.norm();
  const double deviation = std::abs(norm - 1.0);
  if (!std::isfinite(norm) || deviation >= kRenormalizeLimit) {
    throw NonUnitVector("expected a unit vector, got norm " + std::to_string(norm));
  }
  if (deviation <= kUnitTolerance) return x;
  return x / norm;
}

inline Matrix2 rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2 r;
  r << c, -s, s, c;
  return r;
}

inline Matrix2 flip() { return Eigen::Vector2d(1.0, -1.0).asDiagonal(); }

// rotation(theta) * diag(1, -1)
inline Matrix2 reflection(double theta) { return rotation(theta) * flip(); }

// I - 2 x x^T for unit x.
inline Matrix2 householder(const Vector2& x) {
  const Vector2 u = checked_unit(x);
  return Matrix2::Identity() - 2.0 * u * u.transpose();
}

// I - x x^T for unit x.
inline Matrix2 projection(const Vector2& x) {
  const Vector2 u = checked_unit(x);
  return Matrix2::Identity() - u * u.transpose();
}

// Quarter turn counterclockwise.
inline Vector2 perp(const Vector2& x) { return {-x.y(), x.x()}; }

// z-component of the planar cross product.
inline double cross(const Vector2& a, const Vector2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace geometry
}  // namespace angle_rigidity
