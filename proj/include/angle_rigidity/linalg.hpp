#pragma once

#include <algorithm>
#include <limits>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace angle_rigidity {

struct RankInfo {
  int rank = 0;
  int nullspace_dim = 0;
  Eigen::VectorXd singular_values;  // descending
  double tolerance = 0.0;
};

// Default threshold: sigma_max * max(rows, cols) * eps * 100.
inline double default_rank_tolerance(const Eigen::VectorXd& singular_values, Eigen::Index rows,
                                     Eigen::Index cols) {
  const double sigma_max = singular_values.size() > 0 ? singular_values(0) : 0.0;
  return sigma_max * static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * 100.0;
}

inline RankInfo numerical_rank(const Eigen::MatrixXd& m, std::optional<double> tol = std::nullopt) {
  RankInfo info;
  if (m.rows() == 0 || m.cols() == 0) {
    info.singular_values.resize(0);
    info.nullspace_dim = static_cast<int>(m.cols());
    info.tolerance = tol.value_or(0.0);
    return info;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  info.singular_values = svd.singularValues();
  info.tolerance = tol.value_or(default_rank_tolerance(info.singular_values, m.rows(), m.cols()));
  for (Eigen::Index s = 0; s < info.singular_values.size(); ++s) {
    if (info.singular_values(s) > info.tolerance) ++info.rank;
  }
  info.nullspace_dim = static_cast<int>(m.cols()) - info.rank;
  return info;
}

// Orthonormal basis of the numerical nullspace, one vector per column.
inline Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, std::optional<double> tol = std::nullopt) {
  const auto cols = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = tol.value_or(default_rank_tolerance(sv, m.rows(), m.cols()));
  Eigen::Index rank = 0;
  for (Eigen::Index s = 0; s < sv.size(); ++s) {
    if (sv(s) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace angle_rigidity
