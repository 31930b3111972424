#include <set>

#include <gtest/gtest.h>

#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/random.hpp"

using namespace angle_rigidity;

namespace {

const LamanConstruction kFan{{{3, 1, 2}, {4, 1, 3}, {5, 1, 4}}};

std::vector<Triple> list(std::initializer_list<std::array<int, 3>> items) {
  std::vector<Triple> out;
  for (const auto& a : items) out.push_back({a[0], a[1], a[2]});
  return out;
}

// Resamples until every triangle of g has area well away from zero.
Configuration generic_configuration(const Graph& g, Rng& rng) {
  for (;;) {
    Configuration p = random_configuration(g.vertex_count(), rng);
    if (is_strongly_nondegenerate(g, p).strongly_nondegenerate) {
      bool ok = true;
      for (const auto& t : triangles(g)) {
        ok = ok && std::abs(geometry::cross(p.point(t[1]) - p.point(t[0]), p.point(t[2]) - p.point(t[0]))) > 1e-3;
      }
      if (ok) return p;
    }
  }
}

}  // namespace

TEST(AngleIndexSet, CanonicalizesWings) {
  const AngleIndexSet t(list({{2, 3, 1}, {1, 3, 2}}));
  EXPECT_EQ(t.triples(), list({{1, 2, 3}, {2, 1, 3}}));
  EXPECT_TRUE(t.contains({2, 1, 3}));
  EXPECT_THROW(AngleIndexSet(list({{1, 2, 3}, {1, 3, 2}})), InvalidArgument);
  EXPECT_THROW(AngleIndexSet(list({{1, 1, 3}})), InvalidArgument);
}

TEST(AngleIndexSet, ValidateAgainstGraph) {
  const Graph g(3, {{1, 2}, {1, 3}});
  EXPECT_NO_THROW(AngleIndexSet(list({{1, 2, 3}})).validate(g));
  EXPECT_THROW(AngleIndexSet(list({{2, 1, 3}})).validate(g), NotAnEdge);
  EXPECT_THROW(AngleIndexSet(list({{1, 2, 4}})).validate(g), VertexOutOfRange);
}

TEST(FullSet, MatchesBruteForce) {
  Rng rng(31);
  for (int s = 0; s < 40; ++s) {
    const int n = 2 + static_cast<int>(rng.index(8));
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n + 1), std::vector<bool>(static_cast<std::size_t>(n + 1)));
    for (Vertex a = 1; a <= n; ++a) {
      for (Vertex b = a + 1; b <= n; ++b) {
        if (rng.uniform01() < 0.5) {
          edges.push_back({a, b});
          adj[a][b] = adj[b][a] = true;
        }
      }
    }
    std::set<Triple> oracle;
    for (Vertex i = 1; i <= n; ++i) {
      for (Vertex j = 1; j <= n; ++j) {
        for (Vertex k = j + 1; k <= n; ++k) {
          if (i != j && i != k && adj[i][j] && adj[i][k]) oracle.insert({i, j, k});
        }
      }
    }
    const AngleIndexSet t = full_angle_set(Graph(n, edges));
    EXPECT_EQ(std::set<Triple>(t.begin(), t.end()), oracle);
    EXPECT_EQ(t.provenance(), Provenance::kFull);
  }
}

TEST(FullSet, K3HasThree) { EXPECT_EQ(full_angle_set(complete_graph(3)).size(), 3u); }

TEST(TriangleFormation, K3TwoTriples) {
  EXPECT_EQ(triangle_formation_set(complete_graph(3)).triples(), list({{1, 2, 3}, {2, 1, 3}}));
}

TEST(LamanSets, FanCaptionLists) {
  EXPECT_EQ(laman_minimal_set(kFan).triples(),
            list({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {2, 1, 3}, {3, 1, 4}, {4, 1, 5}}));
  std::vector<Triple> global = list({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {2, 1, 3}, {3, 1, 4}, {4, 1, 5}, {1, 2, 4}, {1, 3, 5}});
  std::sort(global.begin(), global.end());
  EXPECT_EQ(laman_global_set(kFan).triples(), global);
}

TEST(LamanSets, Counts) {
  Rng rng(32);
  for (int n = 3; n <= 12; ++n) {
    for (int s = 0; s < 5; ++s) {
      const LamanConstruction c = random_laman_construction(n, rng);
      EXPECT_EQ(static_cast<int>(laman_minimal_set(c).size()), 2 * n - 4);
      if (n >= 4) EXPECT_EQ(static_cast<int>(laman_global_set(c).size()), 3 * n - 7);
    }
  }
}

TEST(LamanSets, GlobalIsRigidAndContainsMinimal) {
  Rng rng(33);
  for (int n = 4; n <= 9; ++n) {
    const LamanConstruction c = random_laman_construction(n, rng);
    const Graph g = build_laman(c);
    const Configuration p = generic_configuration(g, rng);
    const AngleIndexSet star = laman_minimal_set(c);
    const AngleIndexSet dagger = laman_global_set(c);
    for (const auto& t : star) EXPECT_TRUE(dagger.contains(t));
    EXPECT_EQ(is_infinitesimally_angle_rigid(g, p, dagger).nullspace_dim, 4);
  }
}

TEST(LamanSets, MinimalityByDeletion) {
  Rng rng(34);
  for (int n = 3; n <= 8; ++n) {
    const LamanConstruction c = random_laman_construction(n, rng);
    const Graph g = build_laman(c);
    const Configuration p = generic_configuration(g, rng);
    const AngleIndexSet t = laman_minimal_set(c);
    EXPECT_EQ(is_infinitesimally_angle_rigid(g, p, t).nullspace_dim, 4);
    for (std::size_t k = 0; k < t.size(); ++k) {
      EXPECT_GT(is_infinitesimally_angle_rigid(g, p, t.without(k)).nullspace_dim, 4);
    }
  }
}

TEST(PerVertexSet, PentagonDeterministic) {
  const Graph g = build_laman(kFan);
  const Configuration q = regular_polygon(5);
  const AngleIndexSet t = algorithm1_set(g, q);
  // Vertex 1 pairs 2 with 3,4,5; the others pair their smallest neighbor with the rest.
  EXPECT_EQ(t.triples(), list({{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {2, 1, 3}, {3, 1, 2}, {3, 1, 4}, {4, 1, 3}, {4, 1, 5}, {5, 1, 4}}));
  EXPECT_EQ(static_cast<int>(t.size()), 3 * 5 - 6);
  EXPECT_EQ(is_infinitesimally_angle_rigid(g, q, t).nullspace_dim, 4);
}

TEST(PerVertexSet, CollinearNeighborsUseSecondReference) {
  // Vertex 2 sits between 1 and 3 on a line; 4 is off the line.
  const Graph g(4, {{1, 2}, {2, 3}, {2, 4}, {1, 4}, {3, 4}});
  const Configuration p(std::vector<Vector2>{{-1, 0}, {0, 0}, {1, 0}, {0.2, 1}});
  const AngleIndexSet t = algorithm1_set(g, p);
  EXPECT_TRUE(t.contains({2, 1, 4}));
  EXPECT_TRUE(t.contains({2, 3, 4}));
  EXPECT_FALSE(t.contains({2, 1, 3}));
  EXPECT_EQ(is_infinitesimally_angle_rigid(g, p, t).nullspace_dim, 4);
}

TEST(PerVertexSet, RandomRigidFrameworks) {
  Rng rng(35);
  int done = 0;
  while (done < 30) {
    const int n = 3 + static_cast<int>(rng.index(6));
    const Graph g = random_connected_graph(n, n - 2 + static_cast<int>(rng.index(static_cast<std::size_t>(n))), rng);
    const Configuration p = random_configuration(n, rng);
    if (!is_infinitesimally_angle_rigid(g, p, full_angle_set(g)).verdict) continue;
    const AngleIndexSet det = algorithm1_set(g, p);
    const AngleIndexSet seeded = algorithm1_set(g, p, SelectionPolicy::seeded(99));
    EXPECT_EQ(is_infinitesimally_angle_rigid(g, p, det).nullspace_dim, 4);
    EXPECT_EQ(is_infinitesimally_angle_rigid(g, p, seeded).nullspace_dim, 4);
    EXPECT_EQ(seeded, algorithm1_set(g, p, SelectionPolicy::seeded(99)));
    EXPECT_EQ(det.provenance(), Provenance::kAlgorithm1);
    ++done;
  }
}

TEST(PerVertexSet, RejectsFlexible) {
  const Graph g(4, {{1, 2}, {2, 3}, {3, 4}});
  const Configuration p(std::vector<Vector2>{{0, 0}, {1, 0}, {1, 1}, {0, 1.3}});
  EXPECT_THROW(algorithm1_set(g, p), NotInfinitesimallyAngleRigid);
}
