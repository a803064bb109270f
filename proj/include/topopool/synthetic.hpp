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

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "topopool/graph.hpp"
#include "topopool/tudataset.hpp"

namespace topopool::synthetic {

inline AttributedGraph cycle(std::size_t n, int label = 0) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  if (n == 2) pairs.resize(1);
  if (n == 1) pairs.clear();
  return AttributedGraph::from_edges(n, pairs, label);
}

inline AttributedGraph complete(std::size_t n, int label = 0) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return AttributedGraph::from_edges(n, pairs, label);
}

inline AttributedGraph path(std::size_t n, int label = 0) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return AttributedGraph::from_edges(n, pairs, label);
}

inline AttributedGraph star(std::size_t leaves, int label = 0) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 1; i <= leaves; ++i) pairs.emplace_back(0, i);
  return AttributedGraph::from_edges(leaves + 1, pairs, label);
}

// Erdos-Renyi G(n, p) with a single constant feature.
inline AttributedGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) pairs.emplace_back(i, j);
  return AttributedGraph::from_edges(n, pairs);
}

// Balanced two-class set: class 0 are cycles, class 1 are cliques, sizes drawn
// uniformly from [min_size, max_size]. Nodes carry one-hot degree features.
inline DatasetBundle cycles_vs_cliques(std::size_t graph_count, std::uint64_t seed,
                                       std::size_t min_size = 6, std::size_t max_size = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(min_size, max_size);
  std::vector<AttributedGraph> graphs;
  for (std::size_t i = 0; i < graph_count; ++i) {
    const int label = static_cast<int>(i % 2);
    const std::size_t n = size(rng);
    graphs.push_back(label == 0 ? cycle(n, 0) : complete(n, 1));
  }
  return DatasetBundle("cycles_vs_cliques", with_degree_one_hot(graphs), {0, 1});
}

// Molecule-like graphs at MUTAG scale: a spanning tree over `n` atoms plus one
// or two ring closures, with one-hot atom types drawn from `atom_types` kinds.
// The label marks whether the graph carries two rings.
inline DatasetBundle molecule_like(std::size_t graph_count, std::uint64_t seed, std::size_t min_atoms = 10,
                                   std::size_t max_atoms = 28, std::size_t atom_types = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> atoms(min_atoms, max_atoms);
  std::uniform_int_distribution<std::size_t> type(0, atom_types - 1);
  std::vector<AttributedGraph> graphs;
  for (std::size_t gi = 0; gi < graph_count; ++gi) {
    const std::size_t n = atoms(rng);
    const int label = static_cast<int>(gi % 2);
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v) {
      std::uniform_int_distribution<NodeId> parent(v >= 4 ? v - 4 : 0, v - 1);
      edges.push_back({parent(rng), v, 1.0});
    }
    const std::size_t rings = label == 0 ? 1 : 2;
    for (std::size_t r = 0; r < rings; ++r) {
      std::uniform_int_distribution<NodeId> node(0, n - 1);
      for (int attempt = 0; attempt < 32; ++attempt) {
        NodeId a = node(rng);
        NodeId b = node(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        bool exists = false;
        for (const auto& e : edges) exists = exists || (e.u == a && e.v == b) || (e.u == b && e.v == a);
        if (exists) continue;
        edges.push_back({a, b, 1.0});
        break;
      }
    }
    Matrix x(n, atom_types);
    for (NodeId v = 0; v < n; ++v) x(v, type(rng)) = 1.0;
    graphs.emplace_back(n, std::move(edges), std::move(x), label);
  }
  return DatasetBundle("molecule_like", std::move(graphs), {0, 1});
}

}  // namespace topopool::synthetic
