// Copyright 2026 The mctrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "mctrack/multicut.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mctrack/error.hpp"
#include "oracles.hpp"

namespace mctrack {
namespace {

MulticutInstance random_complete(int n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, normal(rng)});
  return MulticutInstance(n, edges);
}

MulticutInstance random_sparse(int n, double density, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(density);
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (keep(rng)) edges.push_back({u, v, normal(rng)});
  return MulticutInstance(n, edges);
}

// Brute-force optimum over all partitions, independent of the library.
double exhaustive_optimum(const MulticutInstance& g) {
  const int n = g.num_nodes();
  std::vector<int> labels(n, 0);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, int i, int k) -> void {
    if (i == n) {
      double s = 0.0;
      for (const WeightedEdge& e : g.edges())
        if (labels[e.u] != labels[e.v]) s += e.cost;
      best = std::min(best, s);
      return;
    }
    for (int l = 0; l <= k; ++l) {
      labels[i] = l;
      self(self, i + 1, std::max(k, l + 1));
    }
  };
  rec(rec, 0, 0);
  return best;
}

TEST(MulticutInstanceTest, RejectsMalformedEdges) {
  EXPECT_THROW(MulticutInstance(3, {{0, 0, 1.0}}), InvalidInput);
  EXPECT_THROW(MulticutInstance(3, {{0, 3, 1.0}}), InvalidInput);
  EXPECT_THROW(MulticutInstance(3, {{-1, 2, 1.0}}), InvalidInput);
  EXPECT_THROW(MulticutInstance(3, {{0, 1, 1.0}, {1, 0, 2.0}}), InvalidInput);
  EXPECT_THROW(MulticutInstance(3, {{0, 1, std::nan("")}}), InvalidInput);
  EXPECT_THROW(MulticutInstance(3, {{0, 1, INFINITY}}), InvalidInput);
}

TEST(MulticutInstanceTest, NormalizesEndpointsAndBuildsAdjacency) {
  const MulticutInstance g(3, {{2, 0, 1.5}, {1, 2, -1.0}});
  EXPECT_EQ(g.edges()[0].u, 0);
  EXPECT_EQ(g.edges()[0].v, 2);
  EXPECT_EQ(g.neighbors(2).size(), 2u);
  EXPECT_EQ(g.neighbors(0).size(), 1u);
  EXPECT_EQ(g.neighbors(0)[0].node, 2);
  EXPECT_EQ(g.neighbors(0)[0].cost, 1.5);
}

TEST(PartitionTest, CanonicalLabelsFollowFirstAppearance) {
  EXPECT_EQ(canonicalize({7, 3, 7, -1, 3, 9}).labels, (std::vector<int>{0, 1, 0, kDiscarded, 1, 2}));
  EXPECT_EQ(canonicalize({7, 3, 7, 9}).num_clusters(), 3);
}

TEST(FeasibilityTest, AgreesWithCycleInequalitiesOnCompleteGraphs) {
  std::mt19937 rng(3);
  for (int n = 3; n <= 6; ++n) {
    const MulticutInstance g = random_complete(n, rng);
    const std::size_t m = g.edges().size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      EdgeLabeling x(m);
      for (std::size_t e = 0; e < m; ++e) x[e] = (mask >> e) & 1u;
      auto cut = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (std::size_t e = 0; e < m; ++e)
          if (g.edges()[e].u == a && g.edges()[e].v == b) return static_cast<int>(x[e]);
        return 0;
      };
      ASSERT_EQ(is_feasible(g, x), oracle::satisfies_cycle_inequalities(n, cut))
          << "n=" << n << " mask=" << mask;
    }
    if (n == 5) break;  // 2^15 labelings on K_6 are covered by the random draws below
  }
}

TEST(FeasibilityTest, InducedLabelingsAreFeasible) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int draw = 0; draw < 50; ++draw) {
    const MulticutInstance g = random_sparse(15, 0.4, rng);
    std::vector<int> labels(15);
    for (int& l : labels) l = pick(rng);
    EXPECT_TRUE(is_feasible(g, induced_labeling(g, canonicalize(labels))));
  }
}

TEST(FeasibilityTest, SingleCutOnTriangleIsInfeasible) {
  const MulticutInstance g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  EXPECT_FALSE(is_feasible(g, {1, 0, 0}));
  EXPECT_TRUE(is_feasible(g, {1, 1, 0}));
  EXPECT_TRUE(is_feasible(g, {1, 1, 1}));
  EXPECT_TRUE(is_feasible(g, {0, 0, 0}));
}

TEST(ObjectiveTest, SumsCutCosts) {
  const MulticutInstance g(3, {{0, 1, 2.0}, {1, 2, -3.0}, {0, 2, 0.5}});
  EXPECT_EQ(objective(g, canonicalize({0, 0, 0})), 0.0);
  EXPECT_EQ(objective(g, canonicalize({0, 1, 2})), -0.5);
  EXPECT_EQ(objective(g, canonicalize({0, 0, 1})), -2.5);
}

TEST(InducedLabelingTest, RejectsBadPartitions) {
  const MulticutInstance g(3, {{0, 1, 1.0}});
  EXPECT_THROW(induced_labeling(g, Partition{{0, 0}}), InvalidInput);
  EXPECT_THROW(induced_labeling(g, Partition{{0, kDiscarded, 0}}), InvalidInput);
}

TEST(BruteForceTest, MatchesExhaustiveEnumeration) {
  std::mt19937 rng(5);
  for (int draw = 0; draw < 40; ++draw) {
    const int n = 3 + draw % 6;
    const MulticutInstance g = draw % 2 ? random_complete(n, rng) : random_sparse(n, 0.6, rng);
    const Partition p = brute_force(g);
    EXPECT_NEAR(objective(g, p), exhaustive_optimum(g), 1e-12);
  }
}

TEST(BruteForceTest, AllPositiveCostsJoinEverything) {
  const MulticutInstance g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  EXPECT_EQ(brute_force(g).labels, (std::vector<int>{0, 0, 0, 0}));
}

TEST(BruteForceTest, AllNegativeCostsGiveSingletons) {
  const MulticutInstance g(4, {{0, 1, -1}, {1, 2, -1}, {2, 3, -1}, {0, 3, -1}, {0, 2, -1}, {1, 3, -1}});
  EXPECT_EQ(brute_force(g).labels, (std::vector<int>{0, 1, 2, 3}));
}

TEST(BruteForceTest, RejectsLargeInstances) {
  EXPECT_THROW(brute_force(MulticutInstance(kBruteForceMaxNodes + 1, {})), InvalidInput);
}

TEST(BruteForceTest, EmptyGraph) {
  EXPECT_TRUE(brute_force(MulticutInstance(0, {})).labels.empty());
  EXPECT_EQ(brute_force(MulticutInstance(3, {})).num_clusters(), 1);  // ties keep the smallest labeling
}

TEST(GreedyContractTest, MergesAlongPositiveChains) {
  const MulticutInstance g(5, {{0, 1, 2.0}, {1, 2, 1.0}, {3, 4, 1.0}, {2, 3, -5.0}});
  EXPECT_EQ(greedy_contract(g).labels, (std::vector<int>{0, 0, 0, 1, 1}));
}

TEST(GreedyContractTest, AccumulatesParallelCosts) {
  // Merging 0 and 1 first makes the combined cost to 2 equal to 0.5.
  const MulticutInstance g(3, {{0, 1, 3.0}, {0, 2, 1.5}, {1, 2, -1.0}});
  EXPECT_EQ(greedy_contract(g).labels, (std::vector<int>{0, 0, 0}));
  const MulticutInstance h(3, {{0, 1, 3.0}, {0, 2, 1.0}, {1, 2, -1.5}});
  EXPECT_EQ(greedy_contract(h).labels, (std::vector<int>{0, 0, 1}));
}

TEST(GreedyContractTest, NeverWorseThanSingletons) {
  std::mt19937 rng(6);
  for (int draw = 0; draw < 30; ++draw) {
    const MulticutInstance g = random_sparse(40, 0.2, rng);
    EXPECT_LE(objective(g, greedy_contract(g)), 0.0);
  }
}

TEST(KljTest, NeverIncreasesTheObjective) {
  std::mt19937 rng(7);
  for (int draw = 0; draw < 30; ++draw) {
    const MulticutInstance g = random_sparse(30, 0.3, rng);
    for (const Partition& init : {singletons(30), greedy_contract(g)}) {
      const KljResult r = klj_solve(g, init);
      ASSERT_FALSE(r.objective_trace.empty());
      EXPECT_EQ(r.objective_trace.front(), objective(g, init));
      for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
        EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] + 1e-9);
      EXPECT_NEAR(r.objective_trace.back(), objective(g, r.partition), 1e-9);
      EXPECT_TRUE(is_feasible(g, induced_labeling(g, r.partition)));
    }
  }
}

TEST(KljTest, CloseToOptimumOnSmallInstances) {
  std::mt19937 rng(8);
  int exact = 0;
  const int draws = 60;
  for (int draw = 0; draw < draws; ++draw) {
    const MulticutInstance g = random_complete(9, rng);
    const double opt = objective(g, brute_force(g));
    const double got = objective(g, klj_solve(g, greedy_contract(g)).partition);
    EXPECT_GE(got, opt - 1e-9);
    exact += got <= opt + 1e-9;
  }
  EXPECT_GE(exact, draws * 8 / 10);
}

TEST(KljTest, RecoversPlantedClusters) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const int n = 60, k = 6;
  std::vector<WeightedEdge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.push_back({a, b, (a % k == b % k) ? u(rng) : -u(rng)});
  const MulticutInstance g(n, edges);
  std::vector<int> truth(n);
  for (int i = 0; i < n; ++i) truth[i] = i % k;
  EXPECT_EQ(klj_solve(g, singletons(n)).partition, canonicalize(truth));
}

TEST(KljTest, FixesABadStartingPartition) {
  // Everything joined while one node clearly belongs elsewhere.
  const MulticutInstance g(4, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}, {2, 3, -3}, {0, 3, -3}, {1, 3, -3}});
  const KljResult r = klj_solve(g, Partition{{0, 0, 0, 0}});
  EXPECT_EQ(r.partition.labels, (std::vector<int>{0, 0, 0, 1}));
}

TEST(KljTest, RespectsPassLimit) {
  std::mt19937 rng(10);
  const MulticutInstance g = random_sparse(50, 0.3, rng);
  const KljResult r = klj_solve(g, singletons(50), 1);
  EXPECT_LE(r.passes, 1);
  EXPECT_THROW(klj_solve(g, singletons(50), 0), InvalidInput);
  EXPECT_THROW(klj_solve(g, singletons(49)), InvalidInput);
}

TEST(KljTest, IsDeterministic) {
  std::mt19937 rng(11);
  const MulticutInstance g = random_sparse(80, 0.15, rng);
  EXPECT_EQ(klj_solve(g, singletons(80)).partition, klj_solve(g, singletons(80)).partition);
}

TEST(KljTest, EmptyGraph) {
  const KljResult r = klj_solve(MulticutInstance(0, {}), singletons(0));
  EXPECT_TRUE(r.partition.labels.empty());
  EXPECT_EQ(klj_solve(MulticutInstance(3, {}), singletons(3)).partition.num_clusters(), 3);
}

TEST(GreedyContractTest, TriangleStopsAfterOneMerge) {
  const MulticutInstance g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, -3.0}});
  const Partition p = greedy_contract(g);
  EXPECT_EQ(p.num_clusters(), 2);
  EXPECT_EQ(objective(g, p), -2.0);
}

TEST(KljTest, TwoNodesJoin) {
  const MulticutInstance g(2, {{0, 1, 2.0}});
  const KljResult r = klj_solve(g, singletons(2));
  EXPECT_EQ(r.partition.labels, (std::vector<int>{0, 0}));
  EXPECT_EQ(objective(g, r.partition), 0.0);
}

TEST(KljTest, OptimalStartIsKept) {
  std::mt19937 rng(13);
  for (int draw = 0; draw < 20; ++draw) {
    const MulticutInstance g = random_complete(8, rng);
    const Partition opt = brute_force(g);
    EXPECT_EQ(klj_solve(g, opt).partition, opt);
  }
}

TEST(BruteForceTest, BeatsRandomPartitions) {
  std::mt19937 rng(14);
  const MulticutInstance g = random_sparse(10, 0.5, rng);
  const double best = objective(g, brute_force(g));
  std::uniform_int_distribution<int> pick(0, 9);
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<int> labels(10);
    for (int& l : labels) l = pick(rng);
    EXPECT_LE(best, objective(g, canonicalize(labels)) + 1e-12);
  }
}

TEST(InstanceFileTest, RoundTrips) {
  std::mt19937 rng(12);
  const MulticutInstance g = random_sparse(20, 0.3, rng);
  std::stringstream s;
  write_instance(s, g);
  const MulticutInstance back = read_instance(s);
  ASSERT_EQ(back.num_nodes(), 20);
  ASSERT_EQ(back.edges().size(), g.edges().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    EXPECT_EQ(back.edges()[e].u, g.edges()[e].u);
    EXPECT_EQ(back.edges()[e].cost, g.edges()[e].cost);
  }
}

TEST(InstanceFileTest, MalformedLineIsReported) {
  std::stringstream s("3\n0 1 1.0\n1 x 2\n");
  try {
    read_instance(s, "g.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

}  // namespace
}  // namespace mctrack
