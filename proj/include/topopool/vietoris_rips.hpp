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
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <tuple>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/filtration.hpp"
#include "topopool/graph.hpp"
#include "topopool/matrix.hpp"
#include "topopool/persistence.hpp"

namespace topopool {

// Vietoris-Rips filtration (dimension <= max_dim <= 2) on `vertices`, whose
// ids index into `dissimilarity`. Vertices enter at 0, an edge at its
// dissimilarity (finite entries only), a triangle at the largest of its edges.
inline Filtration vr_filtration(std::span<const NodeId> vertices, const Matrix& dissimilarity, int max_dim = 2) {
  detail::require(dissimilarity.rows() == dissimilarity.cols(), "vr_filtration: dissimilarity must be square");
  detail::require(max_dim >= 0 && max_dim <= 2, "vr_filtration: max_dim must be in [0, 2]");
  std::vector<NodeId> vs(vertices.begin(), vertices.end());
  std::sort(vs.begin(), vs.end());
  detail::require(std::adjacent_find(vs.begin(), vs.end()) == vs.end(), "vr_filtration: repeated vertex");
  for (NodeId v : vs) detail::require(v < dissimilarity.rows(), "vr_filtration: vertex out of range");

  for (std::size_t i = 0; i < vs.size(); ++i) {
    detail::require(dissimilarity(vs[i], vs[i]) == 0.0, "vr_filtration: diagonal must be zero");
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const double a = dissimilarity(vs[i], vs[j]);
      const double b = dissimilarity(vs[j], vs[i]);
      detail::require(a == b, "vr_filtration: dissimilarity is not symmetric");
      detail::require(a >= 0.0, "vr_filtration: negative dissimilarity");
    }
  }

  std::vector<FilteredSimplex> out;
  for (NodeId v : vs) out.push_back({Simplex{v}, 0.0});
  if (max_dim >= 1) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        const double d = dissimilarity(vs[i], vs[j]);
        if (std::isfinite(d)) out.push_back({Simplex{vs[i], vs[j]}, d});
      }
  }
  if (max_dim >= 2) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        const double dij = dissimilarity(vs[i], vs[j]);
        if (!std::isfinite(dij)) continue;
        for (std::size_t k = j + 1; k < vs.size(); ++k) {
          const double dik = dissimilarity(vs[i], vs[k]);
          const double djk = dissimilarity(vs[j], vs[k]);
          if (std::isfinite(dik) && std::isfinite(djk))
            out.push_back({Simplex{vs[i], vs[j], vs[k]}, std::max({dij, dik, djk})});
        }
      }
  }
  return Filtration(std::move(out));
}

// Vietoris-Rips filtration over every node, using shortest-path distances.
inline Filtration vr_filtration(const DistanceMatrix& distances, int max_dim = 2) {
  std::vector<NodeId> all(distances.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  return vr_filtration(all, distances.matrix(), max_dim);
}

// Dimension 0 and 1 persistence of the Vietoris-Rips filtration on every
// index of `dissimilarity`, without materializing Simplex objects. Edges and
// triangles are ranked by (value, vertex ids); H0 comes from union-find over
// the ranked edges and H1 from the standard column reduction of the triangle
// boundaries, each column a sorted list of edge ranks. Equal as a multiset to
// reduce_boundary(vr_filtration(...)).
inline PersistenceDiagram vr_persistence(const Matrix& dissimilarity) {
  detail::require(dissimilarity.rows() == dissimilarity.cols(), "vr_persistence: dissimilarity must be square");
  const std::size_t n = dissimilarity.rows();
  constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

  struct Ranked {
    double value;
    std::uint32_t a, b, c;
  };
  auto by_value = [](const Ranked& x, const Ranked& y) {
    return std::tie(x.value, x.a, x.b, x.c) < std::tie(y.value, y.a, y.b, y.c);
  };

  std::vector<Ranked> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double d = dissimilarity(i, j);
      detail::require(d == dissimilarity(j, i) && !(d < 0.0), "vr_persistence: bad dissimilarity entry");
      if (std::isfinite(d)) edges.push_back({d, i, j, 0});
    }
  std::sort(edges.begin(), edges.end(), by_value);
  std::vector<std::uint32_t> edge_rank(n * n, none);
  for (std::uint32_t r = 0; r < edges.size(); ++r) edge_rank[edges[r].a * n + edges[r].b] = r;

  std::vector<Ranked> triangles;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (edge_rank[i * n + j] == none) continue;
      for (std::uint32_t k = j + 1; k < n; ++k) {
        if (edge_rank[i * n + k] == none || edge_rank[j * n + k] == none) continue;
        triangles.push_back({std::max({dissimilarity(i, j), dissimilarity(i, k), dissimilarity(j, k)}), i, j, k});
      }
    }
  std::sort(triangles.begin(), triangles.end(), by_value);
  PersistenceDiagram diagram;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<bool> cleared(edges.size(), false);
  for (std::uint32_t r = 0; r < edges.size(); ++r) {
    const auto a = find(edges[r].a);
    const auto b = find(edges[r].b);
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    cleared[r] = true;
    diagram.add(0, 0.0, edges[r].value);
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (find(v) == v) diagram.add(0, 0.0, std::numeric_limits<double>::infinity());

  // When every component is a clique the final complex has no 1-cycles, so
  // the reduction can stop as soon as every cycle-creating edge has died.
  std::vector<std::size_t> component_size(n, 0), component_edges(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++component_size[find(v)];
  for (const auto& e : edges) ++component_edges[find(e.a)];
  bool cliques = true;
  for (std::uint32_t v = 0; v < n; ++v)
    cliques = cliques && 2 * component_edges[v] == component_size[v] * (component_size[v] - 1);
  std::size_t unpaired = static_cast<std::size_t>(std::count(cleared.begin(), cleared.end(), false));

  // Reduced pivot columns are kept sparse; the column being reduced lives in
  // a dense bit set so each addition is a run of bit flips.
  std::vector<std::vector<std::uint32_t>> reduced(triangles.size());
  std::vector<std::uint32_t> owner(edges.size(), none);
  std::vector<std::uint64_t> work(edges.size() / 64 + 1, 0);
  auto flip = [&](std::uint32_t r) { work[r / 64] ^= std::uint64_t{1} << (r % 64); };
  // Highest set bit at or below `from`, or none.
  auto highest = [&](std::uint32_t from) {
    for (std::size_t w = from / 64 + 1; w-- > 0;) {
      std::uint64_t bits = work[w];
      if (w == from / 64 && from % 64 != 63) bits &= (std::uint64_t{1} << (from % 64 + 1)) - 1;
      if (bits != 0) return static_cast<std::uint32_t>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(bits)));
    }
    return none;
  };
  for (std::uint32_t t = 0; t < triangles.size() && !(cliques && unpaired == 0); ++t) {
    const auto& tr = triangles[t];
    const std::array<std::uint32_t, 3> faces{edge_rank[tr.a * n + tr.b], edge_rank[tr.a * n + tr.c],
                                             edge_rank[tr.b * n + tr.c]};
    for (auto r : faces) flip(r);
    std::uint32_t low = std::max({faces[0], faces[1], faces[2]});
    while (low != none && owner[low] != none) {
      for (auto r : reduced[owner[low]]) flip(r);
      low = low == 0 ? none : highest(low - 1);
    }
    if (low == none) continue;
    auto& col = reduced[t];
    for (std::size_t w = 0; w <= low / 64; ++w) {
      for (std::uint64_t bits = work[w]; bits != 0; bits &= bits - 1)
        col.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      work[w] = 0;
    }
    owner[low] = t;
    --unpaired;
  }
  for (std::uint32_t r = 0; r < edges.size(); ++r) {
    if (cleared[r]) continue;
    const double death = owner[r] == none ? std::numeric_limits<double>::infinity() : triangles[owner[r]].value;
    diagram.add(1, edges[r].value, death);
  }
  return diagram;
}

// Largest finite off-diagonal entry, the largest value of the filtration.
inline double vr_max_value(const Matrix& dissimilarity) {
  double m = 0.0;
  for (std::size_t i = 0; i < dissimilarity.rows(); ++i)
    for (std::size_t j = i + 1; j < dissimilarity.cols(); ++j)
      if (std::isfinite(dissimilarity(i, j))) m = std::max(m, dissimilarity(i, j));
  return m;
}

}  // namespace topopool
