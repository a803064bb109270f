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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/matrix.hpp"
#include "topopool/nn/tape.hpp"

namespace topopool::nn {

inline Var matmul(Var a, Var b) {
  Tape& tape = a.tape();
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record(topopool::matmul(a.value(), b.value()), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) t.grad(ia) += topopool::matmul(g, topopool::transpose(t.value(ib)));
    if (t.needs_grad(ib)) t.grad(ib) += topopool::matmul(topopool::transpose(t.value(ia)), g);
  });
}

inline Var add(Var a, Var b) {
  detail::require(a.value().same_shape(b.value()), "add: shape mismatch");
  Matrix out = a.value();
  out += b.value();
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    if (t.needs_grad(ia)) t.grad(ia) += t.grad(self);
    if (t.needs_grad(ib)) t.grad(ib) += t.grad(self);
  });
}

// x (n x d) + row (1 x d), broadcast over rows.
inline Var add_row(Var x, Var row) {
  detail::require(row.rows() == 1 && row.cols() == x.cols(), "add_row: shape mismatch");
  Matrix out = x.value();
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += row.value()(0, j);
  const std::size_t ix = x.id(), ir = row.id();
  return x.tape().record(std::move(out), {x, row}, [ix, ir](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ix)) t.grad(ix) += g;
    if (t.needs_grad(ir)) {
      Matrix& gr = t.grad(ir);
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) gr(0, j) += g(i, j);
    }
  });
}

// x (n x d) * row (1 x d) elementwise, broadcast over rows.
inline Var mul_row(Var x, Var row) {
  detail::require(row.rows() == 1 && row.cols() == x.cols(), "mul_row: shape mismatch");
  Matrix out = x.value();
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= row.value()(0, j);
  const std::size_t ix = x.id(), ir = row.id();
  return x.tape().record(std::move(out), {x, row}, [ix, ir](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    const Matrix& xv = t.value(ix);
    const Matrix& rv = t.value(ir);
    if (t.needs_grad(ix)) {
      Matrix& gx = t.grad(ix);
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) gx(i, j) += g(i, j) * rv(0, j);
    }
    if (t.needs_grad(ir)) {
      Matrix& gr = t.grad(ir);
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) gr(0, j) += g(i, j) * xv(i, j);
    }
  });
}

// x * scale + shift with constant 1 x d rows broadcast over x's rows.
inline Var affine_rows(Var x, const Matrix& scale, const Matrix& shift) {
  detail::require(scale.rows() == 1 && scale.cols() == x.cols() && shift.same_shape(scale),
                  "affine_rows: shape mismatch");
  Matrix out = x.value();
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = out(i, j) * scale(0, j) + shift(0, j);
  const std::size_t ix = x.id();
  return x.tape().record(std::move(out), {x}, [ix, scale](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) gx(i, j) += g(i, j) * scale(0, j);
  });
}

// Elementwise product with a constant mask of the same shape.
inline Var hadamard(Var x, const Matrix& mask) {
  detail::require(x.value().same_shape(mask), "hadamard: shape mismatch");
  Matrix out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= mask.data()[i];
  const std::size_t ix = x.id();
  return x.tape().record(std::move(out), {x}, [ix, mask](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < g.size(); ++i) gx.data()[i] += g.data()[i] * mask.data()[i];
  });
}

inline Var scale(Var x, double s) {
  Matrix out = x.value();
  for (auto& v : out.data()) v *= s;
  const std::size_t ix = x.id();
  return x.tape().record(std::move(out), {x}, [ix, s](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < g.size(); ++i) gx.data()[i] += s * g.data()[i];
  });
}

inline Var relu(Var x) {
  Matrix out = x.value();
  for (auto& v : out.data()) v = std::max(v, 0.0);
  const std::size_t ix = x.id();
  return x.tape().record(std::move(out), {x}, [ix](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    const Matrix& xv = t.value(ix);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (xv.data()[i] > 0.0) gx.data()[i] += g.data()[i];
  });
}

inline Var transpose(Var x) {
  const std::size_t ix = x.id();
  return x.tape().record(topopool::transpose(x.value()), {x}, [ix](Tape& t, std::size_t self) {
    t.grad(ix) += topopool::transpose(t.grad(self));
  });
}

// Rows `idx` of x, in order (a differentiable gather).
inline Var select_rows(Var x, std::vector<std::size_t> idx) {
  Matrix out = topopool::select_rows(x.value(), idx);
  const std::size_t ix = x.id();
  return x.tape().record(std::move(out), {x}, [ix, idx = std::move(idx)](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) gx(idx[i], j) += g(i, j);
  });
}

// Column means: n x d -> 1 x d.
inline Var mean_rows(Var x) {
  const Matrix& xv = x.value();
  detail::require(xv.rows() > 0, "mean_rows: empty input");
  Matrix out(1, xv.cols());
  const double inv = 1.0 / static_cast<double>(xv.rows());
  for (std::size_t i = 0; i < xv.rows(); ++i)
    for (std::size_t j = 0; j < xv.cols(); ++j) out(0, j) += xv(i, j) * inv;
  const std::size_t ix = x.id();
  return x.tape().record(std::move(out), {x}, [ix, inv](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < gx.rows(); ++i)
      for (std::size_t j = 0; j < gx.cols(); ++j) gx(i, j) += g(0, j) * inv;
  });
}

// Horizontal concatenation of single-row inputs.
inline Var concat_cols(Var a, Var b) {
  detail::require(a.rows() == b.rows(), "concat_cols: row count mismatch");
  const std::size_t ca = a.cols();
  Matrix out(a.rows(), ca + b.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < ca; ++j) out(i, j) = a.value()(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, ca + j) = b.value()(i, j);
  }
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib, ca](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) {
      Matrix& ga = t.grad(ia);
      for (std::size_t i = 0; i < ga.rows(); ++i)
        for (std::size_t j = 0; j < ga.cols(); ++j) ga(i, j) += g(i, j);
    }
    if (t.needs_grad(ib)) {
      Matrix& gb = t.grad(ib);
      for (std::size_t i = 0; i < gb.rows(); ++i)
        for (std::size_t j = 0; j < gb.cols(); ++j) gb(i, j) += g(i, ca + j);
    }
  });
}

// sum(x * weights) as a 1 x 1 value; weights is constant.
inline Var weighted_sum(Var x, const Matrix& weights) {
  detail::require(x.value().same_shape(weights), "weighted_sum: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += x.value().data()[i] * weights.data()[i];
  const std::size_t ix = x.id();
  return x.tape().record(Matrix(1, 1, s), {x}, [ix, weights](Tape& t, std::size_t self) {
    const double g = t.grad(self)(0, 0);
    Matrix& gx = t.grad(ix);
    for (std::size_t i = 0; i < weights.size(); ++i) gx.data()[i] += g * weights.data()[i];
  });
}

inline std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double z = 0.0;
  for (auto& v : p) z += (v = std::exp(v - top));
  for (auto& v : p) v /= z;
  return p;
}

// Cross-entropy of softmax(logits) against `label`; logits is 1 x C.
inline Var softmax_cross_entropy(Var logits, std::size_t label) {
  detail::require(logits.rows() == 1, "softmax_cross_entropy: logits must be a single row");
  detail::require(label < logits.cols(), "softmax_cross_entropy: label out of range");
  const auto row = logits.value().row(0);
  const double top = *std::max_element(row.begin(), row.end());
  double z = 0.0;
  for (double v : row) z += std::exp(v - top);
  const double loss = std::log(z) + top - row[label];
  auto probs = softmax(row);
  const std::size_t il = logits.id();
  return logits.tape().record(Matrix(1, 1, loss), {logits}, [il, label, probs = std::move(probs)](Tape& t, std::size_t self) {
    const double g = t.grad(self)(0, 0);
    Matrix& gl = t.grad(il);
    for (std::size_t j = 0; j < probs.size(); ++j) gl(0, j) += g * (probs[j] - (j == label ? 1.0 : 0.0));
  });
}

}  // namespace topopool::nn
