// Copyright 2026 The topopool Authors.
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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "topopool/features.hpp"
#include "topopool/persistence.hpp"
#include "topopool/synthetic.hpp"
#include "topopool/vietoris_rips.hpp"

namespace topopool {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<double> distinct_values(const Filtration& f) {
  std::set<double> s;
  for (const auto& fs : f) s.insert(fs.value);
  return {s.begin(), s.end()};
}

TEST(Diagram, DropsZeroPersistenceAndCountsBetti) {
  PersistenceDiagram d;
  d.add(0, 0.0, 0.0);
  d.add(0, 0.0, 1.0);
  d.add(1, 1.0, inf);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.essential_count(1), 1u);
  EXPECT_EQ(d.betti(0, 0.5), 1u);
  EXPECT_EQ(d.betti(0, 1.0), 0u);
  EXPECT_EQ(d.betti(1, 7.0), 1u);
  EXPECT_THROW(d.add(2, 0.0, 1.0), ContractViolation);
  EXPECT_EQ(to_csv(d), "dim,birth,death\n0,0,1\n1,1,inf\n");
}

TEST(ReduceBoundary, SingleVertex) {
  const auto d = reduce_boundary(Filtration({{Simplex{0}, 0.0}}));
  ASSERT_EQ(d.points(0).size(), 1u);
  EXPECT_TRUE(d.points(0)[0].essential());
  EXPECT_EQ(to_csv(d), "dim,birth,death\n0,0,inf\n");
}

TEST(ReduceBoundary, FourCycle) {
  const auto d = reduce_boundary(vr_filtration(shortest_paths(synthetic::cycle(4)))).canonical();
  ASSERT_EQ(d.points(0).size(), 4u);
  EXPECT_EQ(d.points(0)[0], (PersistencePoint{0.0, 1.0}));
  EXPECT_EQ(d.points(0)[2], (PersistencePoint{0.0, 1.0}));
  EXPECT_TRUE(d.points(0)[3].essential());
  ASSERT_EQ(d.points(1).size(), 1u);
  EXPECT_EQ(d.points(1)[0], (PersistencePoint{1.0, 2.0}));
}

TEST(ReduceBoundary, UnitTriangleHasNoLoop) {
  Matrix m(3, 3, 1.0);
  for (int i = 0; i < 3; ++i) m(i, i) = 0.0;
  EXPECT_TRUE(reduce_boundary(vr_filtration(all_nodes(3), m)).points(1).empty());
}

TEST(ReduceBoundary, RejectsNonMonotoneFiltration) {
  Filtration bad({{Simplex{0}, 1.0}, {Simplex{1}, 0.0}, {Simplex{0, 1}, 0.5}});
  EXPECT_THROW(reduce_boundary(bad), ContractViolation);
}

TEST(ReduceBoundary, BettiMatchesRankOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = generators::random_filtration(rng, 60);
    ASSERT_TRUE(f.is_valid()) << f.violation();
    const auto d = reduce_boundary(f);
    for (double t : distinct_values(f))
      for (int dim = 0; dim <= 1; ++dim) ASSERT_EQ(d.betti(dim, t), oracle::betti(f, dim, t)) << "trial " << trial;
  }
}

TEST(ReduceBoundary, EssentialH0CountsComponents) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = synthetic::random_graph(9, 0.2, rng);
    const auto d = reduce_boundary(vr_filtration(shortest_paths(g)));
    std::size_t components = 0;
    const auto sp = shortest_paths(g);
    for (NodeId v = 0; v < 9; ++v) {
      bool first = true;
      for (NodeId u = 0; u < v; ++u) first = first && !sp.reachable(u, v);
      components += first ? 1 : 0;
    }
    EXPECT_EQ(d.essential_count(0), components);
  }
}

TEST(ReduceBoundary, InvariantToSameValueReordering) {
  // Relabelling vertices permutes the order of equal-valued simplices.
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 6;
    Matrix m(n, n, 0.0);
    std::uniform_int_distribution<int> level(1, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = level(rng);
    std::vector<NodeId> perm = all_nodes(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pm(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pm(perm[i], perm[j]) = m(i, j);
    EXPECT_EQ(reduce_boundary(vr_filtration(all_nodes(n), m)).canonical(),
              reduce_boundary(vr_filtration(all_nodes(n), pm)).canonical());
  }
}

TEST(UnionFind, Examples) {
  Filtration two({{Simplex{0}, 0.0}, {Simplex{1}, 0.0}});
  EXPECT_EQ(h0_union_find(two).essential_count(0), 2u);
  const auto path = h0_union_find(vr_filtration(shortest_paths(synthetic::path(3)))).canonical();
  ASSERT_EQ(path.points(0).size(), 3u);
  EXPECT_EQ(path.points(0)[0], (PersistencePoint{0.0, 1.0}));
  EXPECT_EQ(path.points(0)[1], (PersistencePoint{0.0, 1.0}));
  EXPECT_TRUE(path.points(0)[2].essential());
}

TEST(UnionFind, MatchesReductionInDimensionZero) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = generators::random_filtration(rng, 60);
    const auto full = reduce_boundary(f).canonical();
    const auto uf = h0_union_find(f).canonical();
    ASSERT_EQ(std::vector<PersistencePoint>(uf.points(0).begin(), uf.points(0).end()),
              std::vector<PersistencePoint>(full.points(0).begin(), full.points(0).end()))
        << "trial " << trial;
    EXPECT_TRUE(uf.points(1).empty());
  }
}

TEST(VrPersistence, MatchesReductionOnRandomDissimilarities) {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<int> level(0, 4);
  std::bernoulli_distribution hole(0.2);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % (trial < 1000 ? 9 : 24);
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = hole(rng) ? inf : level(rng) * 0.25;
    const auto f = vr_filtration(all_nodes(n), m);
    ASSERT_EQ(vr_persistence(m).canonical(), reduce_boundary(f).canonical()) << "trial " << trial;
    const double top = vr_max_value(m);
    EXPECT_EQ(essential_cap_for(f), top > 0.0 ? top : 1.0);
  }
}

}  // namespace
}  // namespace topopool
