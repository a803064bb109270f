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

// Independent reference computations for the test suites. Nothing here calls
// into the code under test beyond plain data types.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "topopool/filtration.hpp"
#include "topopool/graph.hpp"
#include "topopool/matrix.hpp"

namespace oracle {

using topopool::Matrix;
using topopool::NodeId;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

// Dense all-pairs distances from an edge list.
inline Matrix floyd_warshall(std::size_t n, const std::vector<topopool::Edge>& edges) {
  Matrix d(n, n, inf);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  for (const auto& e : edges) {
    d(e.u, e.v) = std::min(d(e.u, e.v), e.weight);
    d(e.v, e.u) = std::min(d(e.v, e.u), e.weight);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
  return d;
}

// Betweenness from shortest-path counts: for each unordered pair {s, t} the
// share sigma_sv sigma_vt / sigma_st of every intermediate v lying on a
// shortest s-t path. Path counts come from a depth-first enumeration over
// the tight edges, so integer weights are recommended.
inline std::vector<double> betweenness(std::size_t n, const std::vector<topopool::Edge>& edges) {
  const Matrix d = floyd_warshall(n, edges);
  std::vector<std::vector<std::pair<NodeId, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  // count[s][t] = number of shortest s-t paths.
  std::vector<std::vector<double>> count(n, std::vector<double>(n, 0.0));
  for (NodeId s = 0; s < n; ++s) {
    std::function<void(NodeId, double)> walk = [&](NodeId v, double dist) {
      count[s][v] += 1.0;
      for (auto [w, len] : adj[v])
        if (dist + len == d(s, w)) walk(w, dist + len);
    };
    walk(s, 0.0);
  }
  std::vector<double> out(n, 0.0);
  for (NodeId s = 0; s < n; ++s)
    for (NodeId t = s + 1; t < n; ++t) {
      if (!std::isfinite(d(s, t))) continue;
      for (NodeId v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (d(s, v) + d(v, t) == d(s, t)) out[v] += count[s][v] * count[v][t] / count[s][t];
      }
    }
  return out;
}

// Rank over GF(2) of a 0/1 matrix given as rows of bits.
inline std::size_t gf2_rank(std::vector<std::vector<std::uint8_t>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c] != 0)
        for (std::size_t k = c; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

// Betti number of the sublevel complex {sigma : value(sigma) <= t} by
// rank-nullity: beta_k = #k-simplices - rank d_k - rank d_{k+1}.
inline std::size_t betti(const topopool::Filtration& f, int dim, double t) {
  std::vector<std::vector<topopool::Simplex>> by_dim(3);
  for (const auto& fs : f)
    if (fs.value <= t) by_dim[static_cast<std::size_t>(fs.simplex.dim())].push_back(fs.simplex);
  auto boundary_rank = [&](int k) -> std::size_t {
    if (k <= 0 || k > 2) return 0;
    const auto& cols = by_dim[static_cast<std::size_t>(k)];
    const auto& rows = by_dim[static_cast<std::size_t>(k - 1)];
    if (cols.empty() || rows.empty()) return 0;
    std::vector<std::vector<std::uint8_t>> m(cols.size(), std::vector<std::uint8_t>(rows.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows.size(); ++i) {
        bool face = rows[i].size() + 1 == cols[j].size() &&
                    std::all_of(rows[i].begin(), rows[i].end(), [&](NodeId v) { return cols[j].contains(v); });
        m[j][i] = face ? 1 : 0;
      }
    return gf2_rank(std::move(m));
  };
  const std::size_t n = by_dim[static_cast<std::size_t>(dim)].size();
  return n - boundary_rank(dim) - boundary_rank(dim + 1);
}

// Nodes w with d(w, v) <= d(w, u) for all v in sigma and u in landmarks \ sigma,
// every d(w, v) finite; a direct triple loop.
inline std::vector<NodeId> weak_witnesses(const std::vector<NodeId>& sigma, const Matrix& d,
                                          const std::vector<NodeId>& landmarks) {
  std::vector<NodeId> out;
  for (NodeId w = 0; w < d.rows(); ++w) {
    bool ok = true;
    for (NodeId v : sigma) {
      if (!std::isfinite(d(w, v))) ok = false;
      for (NodeId u : landmarks) {
        if (std::find(sigma.begin(), sigma.end(), u) != sigma.end()) continue;
        if (!(d(w, v) <= d(w, u))) ok = false;
      }
    }
    if (ok) out.push_back(w);
  }
  return out;
}

// Filtered weak witness complex by enumerating every landmark subset of size
// <= max_dim + 1: raw value = min over witnesses of the farthest vertex, kept
// when the subset and all its faces are witnessed, value raised to the
// largest face value. Keys are sorted vertex lists.
inline std::map<std::vector<NodeId>, double> witness_complex(const Matrix& d, const std::vector<NodeId>& landmarks,
                                                             int max_dim) {
  std::map<std::vector<NodeId>, double> out;
  std::vector<NodeId> ls = landmarks;
  std::sort(ls.begin(), ls.end());
  for (NodeId l : ls) out[{l}] = 0.0;
  for (std::size_t size = 2; size <= static_cast<std::size_t>(max_dim) + 1; ++size) {
    std::vector<bool> pick(ls.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(size, ls.size())), true);
    if (size > ls.size()) break;
    do {
      std::vector<NodeId> sigma;
      for (std::size_t i = 0; i < ls.size(); ++i)
        if (pick[i]) sigma.push_back(ls[i]);
      const auto ws = weak_witnesses(sigma, d, ls);
      if (ws.empty()) continue;
      double raw = inf;
      for (NodeId w : ws) {
        double far = 0.0;
        for (NodeId v : sigma) far = std::max(far, d(w, v));
        raw = std::min(raw, far);
      }
      double value = raw;
      bool closed = true;
      for (std::size_t skip = 0; skip < sigma.size(); ++skip) {
        std::vector<NodeId> face;
        for (std::size_t i = 0; i < sigma.size(); ++i)
          if (i != skip) face.push_back(sigma[i]);
        auto it = out.find(face);
        if (it == out.end()) {
          closed = false;
          break;
        }
        value = std::max(value, it->second);
      }
      if (closed) out[sigma] = value;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

// Persistence image with each of the p x p cells split into `sub` x `sub`
// midpoint samples; weight = persistence / alpha_max clamped to [0, 1].
// Rows index persistence, columns index birth.
inline std::vector<double> fine_image(const std::vector<std::pair<double, double>>& birth_persistence,
                                      std::size_t p, double xi, double alpha_max, std::size_t sub = 100) {
  std::vector<double> out(p * p, 0.0);
  const double h = alpha_max / static_cast<double>(p);
  const double k = h / static_cast<double>(sub);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < sub; ++i)
        for (std::size_t j = 0; j < sub; ++j) {
          const double y = (static_cast<double>(r) * h) + (static_cast<double>(i) + 0.5) * k;
          const double x = (static_cast<double>(c) * h) + (static_cast<double>(j) + 0.5) * k;
          for (auto [bx, py] : birth_persistence) {
            const double weight = std::clamp(py / alpha_max, 0.0, 1.0);
            total += weight * std::exp(-((x - bx) * (x - bx) + (y - py) * (y - py)) / (2.0 * xi * xi));
          }
        }
      out[r * p + c] = total * k * k;
    }
  return out;
}

// Central finite-difference gradient of a scalar function of one matrix.
inline Matrix numeric_gradient(const std::function<double(const Matrix&)>& fn, Matrix at, double h = 1e-5) {
  Matrix g(at.rows(), at.cols());
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double keep = at.data()[i];
    at.data()[i] = keep + h;
    const double up = fn(at);
    at.data()[i] = keep - h;
    const double down = fn(at);
    at.data()[i] = keep;
    g.data()[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// max |a - b| / max(1, |b|) style relative error, scaled by the larger norm
// so that near-zero gradients compare on absolute terms.
inline double relative_error(const Matrix& a, const Matrix& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
    scale = std::max({scale, std::abs(a.data()[i]), std::abs(b.data()[i])});
  }
  return diff / std::max(scale, 1e-8);
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (auto& v : m.data()) v = u(rng);
  return m;
}

// Symmetric normalized propagation D^-1/2 (A + I) D^-1/2, written out.
inline Matrix symmetric_propagation(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix out(n, n);
  std::vector<double> deg(n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += a(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ((i == j ? 1.0 : 0.0) + a(i, j)) / std::sqrt(deg[i] * deg[j]);
  return out;
}

}  // namespace oracle
