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

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/matrix.hpp"
#include "topopool/nn/ops.hpp"
#include "topopool/nn/tape.hpp"

namespace topopool::nn {

enum class Normalization {
  symmetric,  // D^-1/2 (A + I) D^-1/2
  literal,    // D^-1/2 (A + I) D^+1/2
};

// Propagation matrix for A + I with the requested degree normalization.
inline Matrix normalized_adjacency(const Matrix& adjacency, Normalization norm = Normalization::symmetric) {
  detail::require(adjacency.rows() == adjacency.cols(), "normalized_adjacency: adjacency must be square");
  const std::size_t n = adjacency.rows();
  Matrix a = adjacency;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += a(i, j);
  const double right_exp = norm == Normalization::symmetric ? -0.5 : 0.5;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) *= std::pow(deg[i], -0.5) * std::pow(deg[j], right_exp);
  return a;
}

// P^k for the normalized propagation matrix P.
inline Matrix propagation_power(const Matrix& adjacency, unsigned k, Normalization norm = Normalization::symmetric) {
  detail::require(k >= 1, "propagation_power: k must be at least 1");
  const Matrix p = normalized_adjacency(adjacency, norm);
  Matrix out = p;
  for (unsigned i = 1; i < k; ++i) out = topopool::matmul(out, p);
  return out;
}

// ReLU(P^k H W) with P^k precomputed.
inline Var gcn_layer(const Matrix& propagation, Var h, Var w) {
  detail::require(propagation.cols() == h.rows(), "gcn_layer: propagation/feature shape mismatch");
  detail::require(h.cols() == w.rows(), "gcn_layer: feature/weight shape mismatch");
  Var p = h.tape().constant(propagation);
  return relu(matmul(matmul(p, h), w));
}

inline Var gcn_layer(const Matrix& adjacency, Var h, Var w, unsigned k, Normalization norm = Normalization::symmetric) {
  detail::require(adjacency.rows() == h.rows(), "gcn_layer: adjacency/feature shape mismatch");
  return gcn_layer(propagation_power(adjacency, k, norm), h, w);
}

enum class SimilarityKind { cosine, gaussian };

inline std::string_view to_string(SimilarityKind k) { return k == SimilarityKind::cosine ? "cosine" : "gaussian"; }

inline SimilarityKind parse_similarity_kind(std::string_view s) {
  if (s == "cosine") return SimilarityKind::cosine;
  if (s == "gaussian") return SimilarityKind::gaussian;
  throw ContractViolation("unknown similarity kind '" + std::string(s) + "'");
}

// Pairwise node similarity of embedding rows. Cosine with a zero-norm row is 0
// off the diagonal; the diagonal is always 1.
inline Matrix similarity_matrix(const Matrix& h, SimilarityKind kind, double gamma = 1.0) {
  const std::size_t n = h.rows();
  Matrix s(n, n);
  if (kind == SimilarityKind::cosine) {
    std::vector<double> norm(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (double v : h.row(i)) norm[i] += v * v;
      norm[i] = std::sqrt(norm[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      s(i, i) = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double c = 0.0;
        if (norm[i] > 0.0 && norm[j] > 0.0) {
          for (std::size_t k = 0; k < h.cols(); ++k) c += h(i, k) * h(j, k);
          c = std::clamp(c / (norm[i] * norm[j]), -1.0, 1.0);
        }
        s(i, j) = s(j, i) = c;
      }
    }
  } else {
    detail::require(gamma > 0.0, "similarity_matrix: gaussian kernel needs gamma > 0");
    for (std::size_t i = 0; i < n; ++i) {
      s(i, i) = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < h.cols(); ++k) d2 += (h(i, k) - h(j, k)) * (h(i, k) - h(j, k));
        s(i, j) = s(j, i) = std::exp(-gamma * d2);
      }
    }
  }
  return s;
}

// H_r^T (H_r W_r) returned as a 1 x d row.
inline Var second_order_attention(Var h_r, Var w_r) {
  detail::require(w_r.cols() == 1 && w_r.rows() == h_r.cols(), "second_order_attention: W_r must be d x 1");
  return transpose(matmul(transpose(h_r), matmul(h_r, w_r)));
}

// Uniform in +-sqrt(6 / (fan_in + fan_out)).
inline Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Matrix m(fan_in, fan_out);
  for (auto& v : m.data()) v = dist(rng);
  return m;
}

struct Linear {
  Linear() = default;
  Linear(const std::string& name, std::size_t in, std::size_t out, std::mt19937_64& rng)
      : weight(name + ".weight", glorot_uniform(in, out, rng)), bias(name + ".bias", Matrix(1, out)) {}

  Var forward(Tape& t, Var x) { return add_row(matmul(x, t.parameter(weight)), t.parameter(bias)); }
  std::vector<Parameter*> parameters() { return {&weight, &bias}; }

  Parameter weight;
  Parameter bias;
};

// Batch normalization driven by running statistics. Graphs are processed one
// at a time, so a forward pass normalizes with the running mean/variance and,
// in training mode, records its input; commit_batch() then folds the recorded
// mini-batch into the running statistics with momentum 0.9. Features whose
// running variance is below 1e-8 pass through unnormalized.
struct BatchNorm {
  static constexpr double momentum = 0.9;
  static constexpr double eps = 1e-5;
  static constexpr double min_variance = 1e-8;

  BatchNorm() = default;
  BatchNorm(const std::string& name, std::size_t dim)
      : gamma(name + ".gamma", Matrix(1, dim, 1.0)),
        beta(name + ".beta", Matrix(1, dim)),
        running_mean(1, dim),
        running_var(1, dim, 1.0) {}

  Var forward(Tape& t, Var x, bool train) {
    const std::size_t d = running_mean.cols();
    detail::require(x.cols() == d, "BatchNorm: feature width mismatch");
    Matrix scale_row(1, d, 1.0);
    Matrix shift_row(1, d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      if (running_var(0, j) < min_variance) continue;
      scale_row(0, j) = 1.0 / std::sqrt(running_var(0, j) + eps);
      shift_row(0, j) = -running_mean(0, j) * scale_row(0, j);
    }
    if (train) {
      for (std::size_t i = 0; i < x.rows(); ++i) pending.push_back(Matrix::row_vector(x.value().row(i)));
    }
    Var normalized = affine_rows(x, scale_row, shift_row);
    return add_row(mul_row(normalized, t.parameter(gamma)), t.parameter(beta));
  }

  void commit_batch() {
    if (pending.empty()) return;
    const std::size_t d = running_mean.cols();
    const double inv = 1.0 / static_cast<double>(pending.size());
    Matrix mean(1, d), var(1, d);
    for (const auto& r : pending)
      for (std::size_t j = 0; j < d; ++j) mean(0, j) += r(0, j) * inv;
    for (const auto& r : pending)
      for (std::size_t j = 0; j < d; ++j) var(0, j) += (r(0, j) - mean(0, j)) * (r(0, j) - mean(0, j)) * inv;
    for (std::size_t j = 0; j < d; ++j) {
      running_mean(0, j) = momentum * running_mean(0, j) + (1.0 - momentum) * mean(0, j);
      running_var(0, j) = momentum * running_var(0, j) + (1.0 - momentum) * var(0, j);
    }
    pending.clear();
  }

  std::vector<Parameter*> parameters() { return {&gamma, &beta}; }

  Parameter gamma;
  Parameter beta;
  Matrix running_mean;
  Matrix running_var;
  std::vector<Matrix> pending;
};

// Two-layer perceptron: Linear -> BatchNorm -> ReLU -> Dropout -> Linear.
struct Mlp {
  Mlp() = default;
  Mlp(const std::string& name, std::size_t in, std::size_t hidden, std::size_t out, double drop_ratio,
      std::mt19937_64& rng)
      : first(name + ".0", in, hidden, rng), norm(name + ".bn", hidden), second(name + ".1", hidden, out, rng),
        dropout(drop_ratio) {
    detail::require(dropout >= 0.0 && dropout <= 0.5, "Mlp: dropout must lie in [0, 0.5]");
  }

  Var forward(Tape& t, Var x, bool train, std::mt19937_64& rng) {
    Var h = relu(norm.forward(t, first.forward(t, x), train));
    if (train && dropout > 0.0) {
      Matrix mask(h.rows(), h.cols());
      std::bernoulli_distribution keep(1.0 - dropout);
      for (auto& m : mask.data()) m = keep(rng) ? 1.0 / (1.0 - dropout) : 0.0;
      h = hadamard(h, mask);
    }
    return second.forward(t, h);
  }

  std::vector<Parameter*> parameters() {
    std::vector<Parameter*> out = first.parameters();
    for (auto* p : norm.parameters()) out.push_back(p);
    for (auto* p : second.parameters()) out.push_back(p);
    return out;
  }

  Linear first;
  BatchNorm norm;
  Linear second;
  double dropout = 0.0;
};

}  // namespace topopool::nn
