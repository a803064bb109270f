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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "topopool/features.hpp"

namespace topopool {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<std::pair<double, double>> birth_persistence(const PersistenceDiagram& d, double cap) {
  std::vector<std::pair<double, double>> out;
  for (int dim = 0; dim <= PersistenceDiagram::max_dim; ++dim)
    for (const auto& p : d.points(dim)) out.emplace_back(p.birth, capped_death(p, cap) - p.birth);
  return out;
}

double worst_relative_error(const PersistenceImage& img, const std::vector<double>& fine) {
  double worst = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i)
    if (fine[i] > 1e-6) worst = std::max(worst, std::abs(img.pixels[i] - fine[i]) / fine[i]);
  return worst;
}

PersistenceDiagram random_diagram(std::mt19937_64& rng, double cap) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, 6);
  PersistenceDiagram d;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const double b = u(rng) * cap * 0.8;
    d.add(i % 2, b, u(rng) < 0.15 ? inf : b + u(rng) * (cap - b));
  }
  return d;
}

TEST(TopologicalScore, UnweightedSumsLifetimes) {
  PersistenceDiagram d;
  d.add(0, 0.0, 1.0);
  d.add(0, 0.0, inf);
  d.add(1, 0.5, 2.0);
  ScoreConfig cfg;
  cfg.essential_cap = 3.0;
  EXPECT_DOUBLE_EQ(topological_score(d, cfg), 1.0 + 3.0 + 1.5);
  EXPECT_EQ(topological_score(PersistenceDiagram{}, cfg), 0.0);
}

TEST(TopologicalScore, ArctanWeighting) {
  PersistenceDiagram d;
  d.add(0, 0.0, 2.0);
  ScoreConfig cfg{ScoreVariant::arctan, 0.1, 2.0, 1.0};
  EXPECT_DOUBLE_EQ(topological_score(d, cfg), std::atan(0.1 * 4.0));
}

TEST(TopologicalScore, BoundsAndMonotonicity) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_diagram(rng, 2.0);
    ScoreConfig unweighted;
    unweighted.essential_cap = 2.0;
    ScoreConfig arctan{ScoreVariant::arctan, 0.1, 2.0, 2.0};
    const double s = topological_score(d, unweighted);
    const double a = topological_score(d, arctan);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 2.0 * static_cast<double>(d.size()));
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, std::numbers::pi / 2.0 * static_cast<double>(d.size()));
    auto more = d;
    more.add(1, 0.25, 1.0);
    EXPECT_GT(topological_score(more, unweighted), s);
    EXPECT_GT(topological_score(more, arctan), a);
  }
}

TEST(TopologicalScore, RejectsBadParameters) {
  EXPECT_THROW(topological_score({}, ScoreConfig{ScoreVariant::arctan, -1.0, 2.0, 1.0}), ContractViolation);
  EXPECT_THROW(topological_score({}, ScoreConfig{ScoreVariant::arctan, 0.1, 0.5, 1.0}), ContractViolation);
  EXPECT_THROW(topological_score({}, ScoreConfig{ScoreVariant::unweighted, 0.1, 2.0, 0.0}), ContractViolation);
  EXPECT_THROW(parse_score_variant("cubic"), ContractViolation);
}

TEST(EssentialCap, LargestValueOrOne) {
  EXPECT_EQ(essential_cap_for(Filtration({{Simplex{0}, 0.0}})), 1.0);
  EXPECT_EQ(essential_cap_for(Filtration({{Simplex{0}, 0.0}, {Simplex{1}, 0.0}, {Simplex{0, 1}, 2.5}})), 2.5);
}

TEST(PersistenceImage, EmptyDiagramIsZero) {
  const auto img = persistence_image({}, 4, 0.3, 1.0);
  EXPECT_EQ(img.pixels, std::vector<double>(16, 0.0));
  EXPECT_EQ(img.flattened().cols(), 16u);
}

TEST(PersistenceImage, DocumentedExampleMatchesFineOracle) {
  PersistenceDiagram d;
  d.add(0, 0.0, 1.0);
  d.add(0, 1.0, 2.0);
  const auto img = persistence_image(d, 5, 0.5, 2.0);
  EXPECT_LT(worst_relative_error(img, oracle::fine_image({{0.0, 1.0}, {1.0, 1.0}}, 5, 0.5, 2.0)), 0.05);
}

TEST(PersistenceImage, DefaultQuadratureMatchesFineOracleOnRandomDiagrams) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> cap(0.5, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double alpha_max = cap(rng);
    const auto d = random_diagram(rng, alpha_max);
    const auto img = persistence_image(d, 5, 0.2 * alpha_max, alpha_max);
    const auto fine = oracle::fine_image(birth_persistence(d, alpha_max), 5, 0.2 * alpha_max, alpha_max, 40);
    EXPECT_LT(worst_relative_error(img, fine), 1e-3) << "trial " << trial;
  }
}

TEST(PersistenceImage, CenterPointConvergesWithWiderKernels) {
  PersistenceDiagram d;
  d.add(0, 0.0, 1.0);
  d.add(1, 0.5, 1.5);
  double previous = inf;
  for (double xi : {0.4, 0.8, 1.6}) {
    const auto img = persistence_image(d, 5, xi, 2.0, PixelQuadrature::center_point);
    const double err = worst_relative_error(img, oracle::fine_image(birth_persistence(d, 2.0), 5, xi, 2.0, 40));
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 0.01);
}

TEST(PersistenceImage, AdditiveAndMonotoneInPoints) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_diagram(rng, 1.5);
    const auto b = random_diagram(rng, 1.5);
    auto both = a;
    for (int dim = 0; dim <= 1; ++dim)
      for (const auto& p : b.points(dim)) both.add(dim, p.birth, p.death);
    const auto ia = persistence_image(a, 5, 0.3, 1.5);
    const auto ib = persistence_image(b, 5, 0.3, 1.5);
    const auto iab = persistence_image(both, 5, 0.3, 1.5);
    for (std::size_t i = 0; i < iab.pixels.size(); ++i) {
      EXPECT_NEAR(iab.pixels[i], ia.pixels[i] + ib.pixels[i], 1e-12);
      EXPECT_GE(iab.pixels[i], ia.pixels[i]);
      EXPECT_GE(ia.pixels[i], 0.0);
    }
  }
}

TEST(PersistenceImage, MassStableUnderSmallBandwidthChange) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = random_diagram(rng, 1.0);
    const double m0 = persistence_image(d, 5, 0.2, 1.0).total_mass();
    const double m1 = persistence_image(d, 5, 0.2 * 1.009, 1.0).total_mass();
    if (m0 > 0.0) {
      EXPECT_LT(std::abs(m1 - m0) / m0, 0.1);
    }
  }
}

TEST(PersistenceImage, DiagonalPointsCarryNoWeight) {
  PersistenceDiagram d;
  d.add(0, 0.5, 0.5);
  EXPECT_EQ(persistence_image(d, 3, 0.2, 1.0).total_mass(), 0.0);
}

TEST(PersistenceImage, RejectsBadParameters) {
  EXPECT_THROW(persistence_image({}, 0, 0.2, 1.0), ContractViolation);
  EXPECT_THROW(persistence_image({}, 5, 0.0, 1.0), ContractViolation);
  EXPECT_THROW(persistence_image({}, 5, 0.2, 0.0), ContractViolation);
}

TEST(PersistenceImage, CsvIsRowMajor) {
  PersistenceDiagram d;
  d.add(0, 0.0, 1.0);
  const auto img = persistence_image(d, 2, 0.5, 1.0);
  const auto csv = to_csv(img);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), ','), 2);
}

}  // namespace
}  // namespace topopool
