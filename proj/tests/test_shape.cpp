#include <cmath>

#include <gtest/gtest.h>

#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/random.hpp"
#include "angle_rigidity/shape.hpp"

using namespace angle_rigidity;

namespace {

const LamanConstruction kFan{{{3, 1, 2}, {4, 1, 3}, {5, 1, 4}}};

}  // namespace

TEST(ShapeClass, RecoversConstructedSimilarity) {
  Rng rng(41);
  for (int s = 0; s < 40; ++s) {
    const int n = 3 + static_cast<int>(rng.index(6));
    const Configuration p = random_configuration(n, rng);
    const double c = rng.uniform(0.2, 4.0);
    const double theta = rng.uniform(-3.0, 3.0);
    const bool reflect = s % 2 == 1;
    const Matrix2 o = reflect ? geometry::reflection(theta) : geometry::rotation(theta);
    const Vector2 xi(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const Configuration q = similarity_transform(p, c, o, xi);

    const SimilarityFit fit = shape_class_membership(p, q);
    EXPECT_TRUE(fit.member);
    EXPECT_EQ(fit.reflected, reflect);
    EXPECT_NEAR(fit.scale, c, 1e-10);
    EXPECT_LT((fit.orthogonal - o).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((fit.translation - xi).norm(), 1e-9);
    EXPECT_LT(fit.residual, 1e-12);
  }
}

TEST(ShapeClass, RejectsDifferentShape) {
  const Configuration square(std::vector<Vector2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Configuration kite(std::vector<Vector2>{{0, 0}, {1, 0}, {1.5, 1.5}, {0, 1}});
  const SimilarityFit fit = shape_class_membership(square, kite);
  EXPECT_FALSE(fit.member);
  EXPECT_GT(fit.residual, 0.1);
  EXPECT_TRUE(shape_class_membership(square, kite, 1.0).member);
}

TEST(ShapeClass, CollapsedTargetIsNotMember) {
  const Configuration p = regular_polygon(4);
  const Configuration point(std::vector<Vector2>(4, Vector2(2, 3)));
  EXPECT_FALSE(shape_class_membership(p, point).member);
  EXPECT_THROW(shape_class_membership(point, p), DegenerateAllCoincident);
}

TEST(AngleCongruence, SimilarVsDistorted) {
  const Configuration p = regular_polygon(5);
  EXPECT_TRUE(angle_congruence_check(p, similarity_transform(p, 3.0, geometry::reflection(1.0), {1, 2})));
  Configuration q = p;
  q.set_point(2, q.point(2) + Vector2(0.05, 0));
  EXPECT_FALSE(angle_congruence_check(p, q));
}

TEST(Spectrum, PentagonFourZeroModes) {
  const Graph g = build_laman(kFan);
  const Configuration q = regular_polygon(5);
  const Spectrum s = jacobian_spectrum(g, q, laman_minimal_set(kFan), q);
  EXPECT_EQ(s.count_near_zero(1e-8), 4);
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    if (std::abs(s.eigenvalues(k)) >= 1e-8) EXPECT_LT(s.eigenvalues(k), -1e-6);
  }
  // Zero modes are exactly the trivial motions.
  const Eigen::MatrixXd z = s.near_zero_vectors(1e-8);
  const Eigen::MatrixXd basis = trivial_motion_basis(q);
  const Eigen::MatrixXd qb = basis.householderQr().householderQ() * Eigen::MatrixXd::Identity(10, 4);
  EXPECT_LT((z - qb * (qb.transpose() * z)).norm(), 1e-8);
}

TEST(Spectrum, LeaderTermLeavesTranslations) {
  const Graph g = build_laman(kFan);
  const Configuration q = regular_polygon(5);
  const LeaderTarget m{{3, 4}, q.point(3) - q.point(4)};
  const Spectrum s = jacobian_spectrum(g, q, laman_minimal_set(kFan), q, m);
  EXPECT_EQ(s.count_near_zero(1e-8), 2);
  const Eigen::MatrixXd z = s.near_zero_vectors(1e-8);
  Eigen::MatrixXd ones = Eigen::MatrixXd::Zero(10, 2);
  for (int v = 0; v < 5; ++v) ones.block<2, 2>(2 * v, 0) = Eigen::Matrix2d::Identity() / std::sqrt(5.0);
  EXPECT_LT((z - ones * (ones.transpose() * z)).norm(), 1e-8);
}

TEST(Spectrum, RejectsNonEquilibrium) {
  const Graph g = build_laman(kFan);
  const Configuration q = regular_polygon(5);
  const Configuration p = perturb(q, 0.3, 1);
  EXPECT_THROW(jacobian_spectrum(g, p, laman_minimal_set(kFan), q), NotAnEquilibrium);
  const LeaderTarget wrong{{3, 4}, {-0.5, 0}};
  EXPECT_THROW(jacobian_spectrum(g, q, laman_minimal_set(kFan), q, wrong), NotAnEquilibrium);
}
