#include <gtest/gtest.h>

#include <random>

#include "orc/transport.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace orc;
using orc::testing::complete;
using orc::testing::cycle;

namespace {

/// Random probability measure on up to max_atoms distinct vertices of [0, n).
std::vector<Atom> random_measure(std::mt19937_64& rng, std::size_t n, std::size_t max_atoms) {
  std::vector<VertexId> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  std::shuffle(verts.begin(), verts.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min(n, max_atoms))(rng);
  std::vector<long> raw(k);
  long total = 0;
  for (auto& r : raw) total += r = std::uniform_int_distribution<long>(1, 9)(rng);
  std::vector<Atom> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back({verts[i], make_scalar(raw[i], static_cast<unsigned long>(total))});
  return out;
}

}  // namespace

TEST(Wasserstein, EqualMeasures) {
  WeightedGraph g = cycle(5);
  ProbMeasure m = one_step_measure(g, 0);
  auto r = wasserstein(HopMetric(g), m, m);
  EXPECT_EQ(r.distance, 0);
  for (const Flow& f : r.plan.flows) EXPECT_EQ(f.source, f.sink);
  DualCertificate cert = dual_certificate(HopMetric(g), m, m, r.distance);
  EXPECT_EQ(dual_value(cert, m.atoms(), m.atoms()), 0);
}

TEST(Wasserstein, PentagonPair) {
  WeightedGraph g = cycle(5);
  ProbMeasure mu = one_step_measure(g, 0), nu = one_step_measure(g, 1);
  auto r = wasserstein(HopMetric(g), mu, nu);
  EXPECT_EQ(r.distance, 1);
  EXPECT_TRUE(verify_plan(r.plan, mu, nu, HopMetric(g)));

  DualCertificate cert = dual_certificate(HopMetric(g), mu, nu, r.distance);
  EXPECT_TRUE(is_one_lipschitz(cert, HopMetric(g)));
  EXPECT_EQ(dual_value(cert, mu.atoms(), nu.atoms()), 1);
  // The hand certificate f(v1) = f(v4) = 1, f(v0) = f(v2) = 0.
  DualCertificate hand{{{0, 0}, {1, 1}, {2, 0}, {4, 1}}};
  EXPECT_TRUE(is_one_lipschitz(hand, HopMetric(g)));
  EXPECT_EQ(dual_value(hand, mu.atoms(), nu.atoms()), 1);
}

TEST(Wasserstein, SingleEdge) {
  WeightedGraph g = complete(2);
  auto mu = ProbMeasure::dirac(1), nu = ProbMeasure::dirac(0);
  auto r = wasserstein(HopMetric(g), mu, nu);
  EXPECT_EQ(r.distance, 1);
  DualCertificate cert = dual_certificate(HopMetric(g), mu, nu, r.distance);
  EXPECT_EQ(cert.at(1) - cert.at(0), 1);
}

TEST(Wasserstein, Errors) {
  WeightedGraph two = build_graph({{0, 1, 1}, {2, 3, 1}});
  try {
    wasserstein(HopMetric(two), ProbMeasure::dirac(0), ProbMeasure::dirac(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteDistance);
  }
  std::vector<Atom> mu{{0, Scalar(1, 2)}}, nu{{1, 1}};
  try {
    wasserstein(HopMetric(cycle(5)), std::span<const Atom>(mu), std::span<const Atom>(nu));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnbalancedMeasures);
  }
  EXPECT_THROW(dual_certificate(HopMetric(cycle(5)), one_step_measure(cycle(5), 0), one_step_measure(cycle(5), 1),
                                Scalar(2)),
               Error);
}

TEST(VerifyPlan, RejectsPerturbedAndEmptyPlans) {
  WeightedGraph g = cycle(5);
  ProbMeasure mu = one_step_measure(g, 0), nu = one_step_measure(g, 1);
  auto r = wasserstein(HopMetric(g), mu, nu);
  ASSERT_TRUE(verify_plan(r.plan, mu, nu, HopMetric(g)));
  TransportPlan bent = r.plan;
  bent.flows.front().mass += Scalar(1, 1000);
  EXPECT_FALSE(verify_plan(bent, mu, nu, HopMetric(g)));
  TransportPlan wrong_cost = r.plan;
  wrong_cost.cost += 1;
  EXPECT_FALSE(verify_plan(wrong_cost, mu, nu, HopMetric(g)));
  EXPECT_FALSE(verify_plan(TransportPlan{{}, 0}, mu, nu, HopMetric(g)));
}

TEST(Wasserstein, MatchesBruteForceOracle) {
  std::mt19937_64 rng(7);
  std::size_t instances = 0;
  for (std::uint64_t seed = 0; instances < 150; ++seed) {
    WeightedGraph g = orc::testing::random_graph(5000 + seed);
    if (g.size() < 3) continue;
    auto mu = random_measure(rng, g.size(), 4);
    auto nu = random_measure(rng, g.size(), 4);
    HopMetric d(g);
    auto r = wasserstein(d, std::span<const Atom>(mu), std::span<const Atom>(nu));

    std::vector<Scalar> supply, demand;
    std::vector<long> cost;
    for (const Atom& a : mu) supply.push_back(a.mass);
    for (const Atom& b : nu) demand.push_back(b.mass);
    for (const Atom& a : mu)
      for (const Atom& b : nu) cost.push_back(static_cast<long>(*d(a.vertex, b.vertex)));
    auto oracle = orc::testing::brute_force_transport(supply, demand, cost);
    ASSERT_TRUE(oracle);
    ASSERT_EQ(r.distance, oracle->cost) << "seed " << seed;
    ASSERT_TRUE(verify_plan(r.plan, std::span<const Atom>(mu), std::span<const Atom>(nu), d));

    DualCertificate cert = dual_certificate(d, std::span<const Atom>(mu), std::span<const Atom>(nu), r.distance);
    ASSERT_TRUE(is_one_lipschitz(cert, d));
    ASSERT_EQ(dual_value(cert, mu, nu), r.distance);
    ++instances;
  }
}

TEST(Wasserstein, TriangleInequalityAndScaling) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    WeightedGraph g = orc::testing::random_graph(9000 + seed);
    HopMetric d(g);
    auto a = random_measure(rng, g.size(), 5), b = random_measure(rng, g.size(), 5), c = random_measure(rng, g.size(), 5);
    auto w = [&](const std::vector<Atom>& x, const std::vector<Atom>& y) {
      return wasserstein(d, std::span<const Atom>(x), std::span<const Atom>(y)).distance;
    };
    EXPECT_LE(w(a, c), w(a, b) + w(b, c));
    EXPECT_EQ(w(a, b), w(b, a));
    auto doubled = wasserstein(ScaledMetric<HopMetric>(d, 2), std::span<const Atom>(a), std::span<const Atom>(b));
    EXPECT_EQ(doubled.distance, 2 * w(a, b));
  }
}
