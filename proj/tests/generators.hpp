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

// Seeded random instances shared by the unit tests and the acceptance runner.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "topopool/filtration.hpp"
#include "topopool/graph.hpp"

namespace generators {

using topopool::Edge;
using topopool::FilteredSimplex;
using topopool::Filtration;
using topopool::Matrix;
using topopool::NodeId;
using topopool::Simplex;

// Valid filtration with up to `max_simplices` simplices: vertices with random
// births, edges and triangles of the clique complex valued at or above their
// faces. Values sit on a coarse grid so ties are common.
inline Filtration random_filtration(std::mt19937_64& rng, std::size_t max_simplices) {
  std::uniform_int_distribution<std::size_t> size(1, 7);
  std::uniform_int_distribution<int> step(0, 3);
  std::bernoulli_distribution keep_edge(0.6), keep_tri(0.5);
  const std::size_t n = size(rng);
  std::vector<FilteredSimplex> out;
  std::vector<double> birth(n);
  for (NodeId v = 0; v < n; ++v) {
    birth[v] = step(rng) * 0.5;
    out.push_back({Simplex{v}, birth[v]});
  }
  Matrix edge(n, n, -1.0);
  for (NodeId u = 0; u < n && out.size() < max_simplices; ++u)
    for (NodeId v = u + 1; v < n && out.size() < max_simplices; ++v)
      if (keep_edge(rng)) {
        edge(u, v) = std::max(birth[u], birth[v]) + step(rng) * 0.5;
        out.push_back({Simplex{u, v}, edge(u, v)});
      }
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n && out.size() < max_simplices; ++c)
        if (edge(a, b) >= 0 && edge(a, c) >= 0 && edge(b, c) >= 0 && keep_tri(rng))
          out.push_back({Simplex{a, b, c}, std::max({edge(a, b), edge(a, c), edge(b, c)}) + step(rng) * 0.25});
  return Filtration(std::move(out));
}

// Erdos-Renyi graph with integer edge weights in [1, 3] and one constant feature.
inline topopool::AttributedGraph random_weighted_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::uniform_int_distribution<int> weight(1, 3);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (keep(rng)) edges.push_back({u, v, static_cast<double>(weight(rng))});
  return topopool::AttributedGraph(n, std::move(edges), Matrix(n, 1, 1.0));
}

// Non-empty random subset of {0, ..., n-1} with at most `max_size` members, sorted.
inline std::vector<NodeId> random_subset(std::size_t n, std::size_t max_size, std::mt19937_64& rng) {
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  std::shuffle(all.begin(), all.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min(n, max_size))(rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace generators
