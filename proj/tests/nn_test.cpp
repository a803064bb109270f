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
#include <filesystem>
#include <numbers>
#include <random>

#include "gradcheck.hpp"
#include "oracles.hpp"
#include "topopool/nn/adam.hpp"
#include "topopool/nn/checkpoint.hpp"
#include "topopool/nn/layers.hpp"
#include "topopool/nn/ops.hpp"

namespace topopool::nn {
namespace {

Matrix value_of(const std::function<Var(Tape&)>& build) {
  Tape t;
  return build(t).value();
}

TEST(GcnLayer, EmptyGraphIsIdentityPropagation) {
  const Matrix a(2, 2);
  const Matrix out = value_of([&](Tape& t) {
    return gcn_layer(a, t.constant({{1, -1}, {2, 3}}), t.constant(Matrix::identity(2)), 1);
  });
  EXPECT_EQ(out, (Matrix{{1, 0}, {2, 3}}));
}

TEST(GcnLayer, SingleEdgePreservesConstantVector) {
  const Matrix a{{0, 1}, {1, 0}};
  const Matrix out = value_of([&](Tape& t) { return gcn_layer(a, t.constant({{1}, {1}}), t.constant({{1}}), 1); });
  EXPECT_NEAR(out(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(out(1, 0), 1.0, 1e-15);
}

TEST(GcnLayer, SecondPowerMatchesExplicitProducts) {
  std::mt19937_64 rng(51);
  Matrix a(5, 5);
  std::bernoulli_distribution edge(0.5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) a(i, j) = a(j, i) = edge(rng) ? 1.0 : 0.0;
  const Matrix h = oracle::random_matrix(5, 3, rng), w = oracle::random_matrix(3, 4, rng);
  const Matrix p = oracle::symmetric_propagation(a);
  Matrix expected = oracle::matmul(oracle::matmul(oracle::matmul(p, p), h), w);
  for (auto& v : expected.data()) v = std::max(v, 0.0);
  const Matrix out = value_of([&](Tape& t) { return gcn_layer(a, t.constant(h), t.constant(w), 2); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out.data()[i], expected.data()[i], 1e-10);
}

TEST(GcnLayer, RegularGraphKeepsConstantColumnsConstant) {
  // 6-cycle is 2-regular; propagation must map constant columns to constant columns.
  Matrix a(6, 6);
  for (std::size_t i = 0; i < 6; ++i) a(i, (i + 1) % 6) = a((i + 1) % 6, i) = 1.0;
  Matrix h(6, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    h(i, 0) = 0.7;
    h(i, 1) = static_cast<double>(i);
  }
  const Matrix ph = topopool::matmul(propagation_power(a, 3), h);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_NEAR(ph(i, 0), ph(0, 0), 1e-12);
  EXPECT_NEAR(ph(0, 0), 0.7, 1e-12);
}

TEST(GcnLayer, LiteralNormalizationDiffersOnIrregularGraph) {
  const Matrix a{{0, 1, 1}, {1, 0, 0}, {1, 0, 0}};
  const Matrix sym = normalized_adjacency(a, Normalization::symmetric);
  const Matrix lit = normalized_adjacency(a, Normalization::literal);
  const Matrix expected = oracle::symmetric_propagation(a);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(sym.data()[i], expected.data()[i], 1e-15);
  EXPECT_NEAR(lit(0, 1), 1.0 / std::sqrt(3.0) * std::sqrt(2.0), 1e-15);
  EXPECT_NE(sym, lit);
}

TEST(GcnLayer, RejectsShapeMismatch) {
  Tape t;
  EXPECT_THROW(gcn_layer(Matrix(3, 3), t.constant(Matrix(2, 2)), t.constant(Matrix(2, 2)), 1), ContractViolation);
  EXPECT_THROW(gcn_layer(Matrix(2, 2), t.constant(Matrix(2, 3)), t.constant(Matrix(2, 2)), 1), ContractViolation);
  EXPECT_THROW(propagation_power(Matrix(2, 2), 0), ContractViolation);
}

TEST(Similarity, Examples) {
  EXPECT_EQ(similarity_matrix({{1, 0}, {0, 1}}, SimilarityKind::cosine)(0, 1), 0.0);
  EXPECT_EQ(similarity_matrix({{2, 5}, {2, 5}}, SimilarityKind::gaussian, 3.0)(0, 1), 1.0);
  EXPECT_NEAR(similarity_matrix({{1, 0}, {1, 1}}, SimilarityKind::cosine)(0, 1), 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(similarity_matrix({{0, 0}, {1, 1}}, SimilarityKind::gaussian, 0.5)(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(similarity_matrix({{0, 0}, {1, 1}}, SimilarityKind::cosine)(0, 1), 0.0);
  EXPECT_THROW(similarity_matrix({{1}}, SimilarityKind::gaussian, 0.0), ContractViolation);
  EXPECT_THROW(parse_similarity_kind("dot"), ContractViolation);
}

TEST(Similarity, RangesAndSymmetry) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix h = oracle::random_matrix(7, 3, rng, -2.0, 2.0);
    const Matrix c = similarity_matrix(h, SimilarityKind::cosine);
    const Matrix g = similarity_matrix(h, SimilarityKind::gaussian, 0.7);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) {
        EXPECT_EQ(c(i, j), c(j, i));
        EXPECT_EQ(g(i, j), g(j, i));
        EXPECT_GE(c(i, j), -1.0);
        EXPECT_LE(c(i, j), 1.0);
        EXPECT_GT(g(i, j), 0.0);
        EXPECT_LE(g(i, j), 1.0);
      }
  }
}

TEST(SecondOrderAttention, Examples) {
  EXPECT_EQ(value_of([](Tape& t) { return second_order_attention(t.constant(Matrix::identity(2)), t.constant({{1}, {1}})); }),
            (Matrix{{1, 1}}));
  EXPECT_EQ(value_of([](Tape& t) { return second_order_attention(t.constant(Matrix(3, 2)), t.constant({{1}, {2}})); }),
            (Matrix{{0, 0}}));
  std::mt19937_64 rng(53);
  const Matrix h = oracle::random_matrix(3, 4, rng), w = oracle::random_matrix(4, 1, rng);
  const Matrix expected = oracle::transpose(oracle::matmul(oracle::transpose(h), oracle::matmul(h, w)));
  const Matrix out = value_of([&](Tape& t) { return second_order_attention(t.constant(h), t.constant(w)); });
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(out(0, i), expected(0, i), 1e-12);
  Tape t;
  EXPECT_THROW(second_order_attention(t.constant(Matrix(3, 2)), t.constant(Matrix(3, 1))), ContractViolation);
}

TEST(SoftmaxCrossEntropy, UniformLogitsGiveLnTwo) {
  const Matrix loss = value_of([](Tape& t) { return softmax_cross_entropy(t.constant({{0, 0}}), 0); });
  EXPECT_NEAR(loss(0, 0), std::numbers::ln2, 1e-15);
  Tape t;
  EXPECT_THROW(softmax_cross_entropy(t.constant({{0, 0}}), 2), ContractViolation);
}

TEST(SoftmaxCrossEntropy, ProbabilitiesSumToOneAndLossNonNegative) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix logits = oracle::random_matrix(1, 5, rng, -30.0, 30.0);
    const auto p = softmax(logits.row(0));
    double total = 0.0;
    for (double v : p) total += v;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_GE(value_of([&](Tape& t) { return softmax_cross_entropy(t.constant(logits), trial % 5); })(0, 0), 0.0);
  }
}

TEST(Mlp, EvalWithoutDropoutIsDeterministic) {
  std::mt19937_64 init(55), masks(1);
  Mlp mlp("m", 3, 4, 2, 0.0, init);
  const Matrix x{{0.1, -0.2, 0.3}};
  const Matrix a = value_of([&](Tape& t) { return mlp.forward(t, t.constant(x), false, masks); });
  const Matrix b = value_of([&](Tape& t) { return mlp.forward(t, t.constant(x), false, masks); });
  EXPECT_EQ(a, b);
  std::mt19937_64 rng(0);
  EXPECT_THROW(Mlp("m", 3, 4, 2, 0.6, rng), ContractViolation);
}

TEST(BatchNorm, RunningStatisticsAndIdentityFallback) {
  BatchNorm bn("bn", 2);
  bn.running_var = Matrix{{1.0, 0.0}};
  Tape t;
  const Matrix x{{3.0, 5.0}, {1.0, 5.0}};
  const Matrix out = bn.forward(t, t.constant(x), true).value();
  EXPECT_NEAR(out(0, 0), 3.0 / std::sqrt(1.0 + BatchNorm::eps), 1e-12);
  EXPECT_EQ(out(0, 1), 5.0);
  bn.commit_batch();
  EXPECT_NEAR(bn.running_mean(0, 0), 0.1 * 2.0, 1e-15);
  EXPECT_NEAR(bn.running_var(0, 0), 0.9 * 1.0 + 0.1 * 1.0, 1e-15);
  EXPECT_NEAR(bn.running_mean(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(bn.running_var(0, 1), 0.0, 1e-15);
  EXPECT_TRUE(bn.pending.empty());
}

TEST(Adam, SingleStepOnSquare) {
  Parameter w("w", Matrix{{1.0}});
  Adam opt({&w}, {.lr = 0.1});
  w.grad(0, 0) = 2.0 * w.value(0, 0);
  opt.step();
  EXPECT_NEAR(w.value(0, 0), 0.9, 1e-7);
  EXPECT_EQ(opt.step_count(), 1u);
}

TEST(Adam, ZeroGradientsLeaveParametersUnchanged) {
  std::mt19937_64 rng(56);
  Parameter w("w", oracle::random_matrix(3, 3, rng));
  const Matrix before = w.value;
  Adam opt({&w}, {.lr = 0.5});
  for (int i = 0; i < 10; ++i) opt.step();
  EXPECT_EQ(w.value, before);
  EXPECT_THROW(Adam({&w}, {.lr = 0.0}), ContractViolation);
}

TEST(Checkpoint, RoundTripsExactly) {
  std::mt19937_64 rng(57);
  Matrix a = oracle::random_matrix(3, 4, rng, -1e6, 1e6), b = oracle::random_matrix(1, 2, rng);
  a(0, 0) = 1.0 / 3.0;
  const auto path = std::filesystem::temp_directory_path() / "topopool_checkpoint_test.json";
  save_checkpoint({{"a", &a}, {"b", &b}}, path);
  Matrix a2(3, 4), b2(1, 2);
  load_checkpoint({{"a", &a2}, {"b", &b2}}, path);
  EXPECT_EQ(a2, a);
  EXPECT_EQ(b2, b);
  Matrix wrong(2, 2);
  EXPECT_THROW(load_checkpoint({{"a", &wrong}, {"b", &b2}}, path), Error);
  std::filesystem::remove(path);
}

TEST(Tape, GradientsAccumulateAcrossUses) {
  Parameter p("p", Matrix{{2.0}});
  Tape t;
  Var x = t.parameter(p);
  t.backward(matmul(x, x));
  EXPECT_EQ(p.grad(0, 0), 4.0);
}

TEST(GradientCheck, EveryLayerOnRandomShapes) {
  std::mt19937_64 rng(58);
  for (const auto& layer : gradcheck::layers())
    for (int shape = 0; shape < 20; ++shape) {
      const double err = layer.run(rng);
      EXPECT_LT(err, 1e-4) << layer.name << " shape " << shape;
    }
}

}  // namespace
}  // namespace topopool::nn
