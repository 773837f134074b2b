#include <gtest/gtest.h>

#include "orc/random_walk.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace orc;
using orc::testing::complete;
using orc::testing::cycle;

namespace {

std::vector<std::pair<VertexId, Scalar>> as_pairs(const ProbMeasure& m) {
  std::vector<std::pair<VertexId, Scalar>> out;
  for (const Atom& a : m.atoms()) out.emplace_back(a.vertex, a.mass);
  return out;
}

using Pairs = std::vector<std::pair<VertexId, Scalar>>;

}  // namespace

TEST(ProbMeasure, Validation) {
  EXPECT_THROW(ProbMeasure::from_atoms({{0, Scalar(1, 2)}}), Error);
  EXPECT_THROW(ProbMeasure::from_atoms({{0, Scalar(3, 2)}, {1, Scalar(-1, 2)}}), Error);
  ProbMeasure m = ProbMeasure::from_atoms({{2, Scalar(1, 4)}, {0, Scalar(1, 2)}, {2, Scalar(1, 4)}});
  EXPECT_EQ(as_pairs(m), (Pairs{{0, Scalar(1, 2)}, {2, Scalar(1, 2)}}));
  EXPECT_EQ(m.mass(1), 0);
}

TEST(OneStep, Examples) {
  EXPECT_EQ(as_pairs(one_step_measure(cycle(5), 0)), (Pairs{{1, Scalar(1, 2)}, {4, Scalar(1, 2)}}));
  WeightedGraph lazy = orc::testing::lazy_complete(5);
  for (VertexId x = 0; x < 5; ++x) {
    ProbMeasure m = one_step_measure(lazy, x);
    EXPECT_EQ(m.support_size(), 5u);
    for (VertexId y = 0; y < 5; ++y) EXPECT_EQ(m.mass(y), Scalar(1, 5));
  }
  EXPECT_EQ(as_pairs(one_step_measure(build_graph({{0, 0, 1}}), 0)), (Pairs{{0, 1}}));
}

TEST(TStep, Examples) {
  EXPECT_EQ(as_pairs(t_step_measure(cycle(5), 0, 2)), (Pairs{{0, Scalar(1, 2)}, {2, Scalar(1, 4)}, {3, Scalar(1, 4)}}));
  EXPECT_EQ(as_pairs(t_step_measure(cycle(5), 3, 1)), as_pairs(one_step_measure(cycle(5), 3)));
  ProbMeasure c4 = t_step_measure(cycle(4), 0, 2);
  EXPECT_EQ(as_pairs(c4), (Pairs{{0, Scalar(1, 2)}, {2, Scalar(1, 2)}}));
  EXPECT_THROW(t_step_measure(cycle(5), 0, 0), Error);
  EXPECT_THROW(t_step_measure(cycle(5), 9, 1), Error);
}

TEST(TStep, MatchesMatrixPowerAndBooleanSupport) {
  for (const auto& [name, g] : orc::testing::full_corpus()) {
    const std::size_t n = g.size();
    for (std::size_t t = 1; t <= 4; ++t) {
      auto p = orc::testing::matrix_power(g, t);
      auto reach = orc::testing::boolean_power(g, t);
      auto support = walk_support(g, t);
      for (VertexId x = 0; x < n; ++x) {
        ProbMeasure m = t_step_measure(g, x, t);
        for (VertexId y = 0; y < n; ++y) {
          ASSERT_EQ(m.mass(y), p[x * n + y]) << name << " t=" << t;
          ASSERT_EQ(support[x * n + y] != 0, reach[x * n + y] != 0) << name;
          ASSERT_EQ(sgn(m.mass(y)) > 0, reach[x * n + y] != 0) << name;
        }
      }
    }
  }
}

TEST(NeighborhoodGraph, PentagonWeights) {
  WeightedGraph g2 = neighborhood_graph(cycle(5), 2).graph;
  for (VertexId x = 0; x < 5; ++x) {
    EXPECT_EQ(g2.weight(x, x), 1);
    EXPECT_EQ(g2.weight(x, (x + 2) % 5), Scalar(1, 2));
    EXPECT_EQ(g2.weight(x, (x + 1) % 5), 0);
  }
  EXPECT_EQ(g2.edge_count(), 10u);
  EXPECT_EQ(g2.loop_count(), 5u);

  WeightedGraph g3 = neighborhood_graph(cycle(5), 3).graph;
  for (VertexId x = 0; x < 5; ++x) {
    EXPECT_EQ(g3.weight(x, x), 0);
    EXPECT_EQ(g3.weight(x, (x + 1) % 5), Scalar(3, 4));
    EXPECT_EQ(g3.weight(x, (x + 2) % 5), Scalar(1, 4));
  }

  WeightedGraph g4 = neighborhood_graph(cycle(5), 4).graph;
  for (VertexId x = 0; x < 5; ++x) {
    EXPECT_EQ(g4.weight(x, x), Scalar(3, 4));
    EXPECT_EQ(g4.weight(x, (x + 2) % 5), Scalar(1, 2));
    EXPECT_EQ(g4.weight(x, (x + 1) % 5), Scalar(1, 8));
  }
}

TEST(NeighborhoodGraph, IdentityAtOneAndErrors) {
  for (const auto& [name, g] : orc::testing::named_corpus()) EXPECT_EQ(neighborhood_graph(g, 1).graph, g) << name;
  EXPECT_THROW(neighborhood_graph(cycle(5), 0), Error);
}

TEST(NeighborhoodGraph, DegreesSymmetryAndConnectivity) {
  for (const auto& [name, g] : orc::testing::full_corpus()) {
    const bool bipartite = is_bipartite(g).bipartite;
    for (std::size_t t = 1; t <= 6; ++t) {
      NeighborhoodGraph gt = neighborhood_graph(g, t);
      EXPECT_EQ(gt.step, t);
      for (VertexId x = 0; x < g.size(); ++x) {
        ASSERT_EQ(gt.graph.degree(x), g.degree(x)) << name << " t=" << t;
        for (VertexId y = 0; y < g.size(); ++y) ASSERT_EQ(gt.graph.weight(x, y), gt.graph.weight(y, x));
      }
      if (!bipartite) {
        EXPECT_TRUE(validate_connected(gt.graph)) << name << " t=" << t;
      } else if (t % 2 == 0) {
        if (g.size() > 1) EXPECT_FALSE(validate_connected(gt.graph)) << name << " t=" << t;
      } else {
        EXPECT_TRUE(is_bipartite(gt.graph).bipartite) << name << " t=" << t;
      }
    }
  }
}

TEST(HeatKernel, Examples) {
  EXPECT_EQ(heat_kernel(cycle(5), 2, 0, 0), Scalar(1, 4));
  EXPECT_EQ(heat_kernel(cycle(5), 2, 0, 1), 0);
  EXPECT_EQ(heat_kernel(complete(2), 1, 0, 1), 1);
  for (const auto& [name, g] : orc::testing::named_corpus())
    for (VertexId x = 0; x < g.size(); ++x)
      for (VertexId y = 0; y < g.size(); ++y) EXPECT_EQ(heat_kernel(g, 3, x, y), heat_kernel(g, 3, y, x)) << name;
}

TEST(LazyGraph, Examples) {
  for (std::size_t n : {3u, 5u, 8u}) {
    WeightedGraph lazy = lazy_graph(complete(n), Scalar(1, static_cast<unsigned long>(n)));
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = 0; y < n; ++y) EXPECT_EQ(one_step_measure(lazy, x).mass(y), Scalar(1, static_cast<unsigned long>(n)));
  }
  EXPECT_EQ(lazy_graph(cycle(5), Scalar(0)), cycle(5));
  WeightedGraph k2 = lazy_graph(complete(2), Scalar(1, 2));
  EXPECT_EQ(as_pairs(one_step_measure(k2, 0)), (Pairs{{0, Scalar(1, 2)}, {1, Scalar(1, 2)}}));

  // per-vertex laziness keeps off-loop ratios
  WeightedGraph w = build_graph({{0, 1, 1}, {0, 2, 3}});
  std::vector<Scalar> p{Scalar(1, 3), Scalar(0), Scalar(1, 2)};
  WeightedGraph lw = lazy_graph(w, p);
  EXPECT_EQ(one_step_measure(lw, 0).mass(0), Scalar(1, 3));
  EXPECT_EQ(one_step_measure(lw, 0).mass(2) / one_step_measure(lw, 0).mass(1), 3);
  EXPECT_EQ(one_step_measure(lw, 2).mass(2), Scalar(1, 2));

  EXPECT_THROW(lazy_graph(build_graph({{0, 0, 1}, {0, 1, 1}}), Scalar(1, 2)), Error);
  EXPECT_THROW(lazy_graph(cycle(5), Scalar(1)), Error);
  EXPECT_THROW(lazy_graph(cycle(5), Scalar(-1, 2)), Error);
}

TEST(FirstCompleteT, MatchesBooleanPowers) {
  EXPECT_EQ(first_complete_t(cycle(5), 16), 4u);
  EXPECT_FALSE(first_complete_t(cycle(4), 32).has_value());
  EXPECT_EQ(first_complete_t(complete(3), 16), 2u);
  EXPECT_FALSE(first_complete_t(cycle(5), 3).has_value());
  for (const auto& [name, g] : orc::testing::full_corpus()) {
    std::optional<std::size_t> oracle;
    for (std::size_t t = 1; t <= 16 && !oracle; ++t) {
      auto r = orc::testing::boolean_power(g, t);
      if (std::all_of(r.begin(), r.end(), [](char c) { return c != 0; })) oracle = t;
    }
    EXPECT_EQ(first_complete_t(g, 16), oracle) << name;
  }
}
