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
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/matrix.hpp"

namespace topopool {

using NodeId = std::size_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 1.0;
};

// Undirected attributed graph: N nodes, symmetric weighted edges (no self-loops,
// no duplicates), an N x F feature matrix, and an integer class label.
//
// Edges are stored normalized (u < v) and sorted, so two graphs built from the
// same edge set compare equal regardless of input order.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  AttributedGraph(std::size_t node_count, std::vector<Edge> edges, Matrix features,
                  int label = 0)
      : node_count_(node_count), features_(std::move(features)), label_(label) {
    detail::require(node_count_ >= 1, "AttributedGraph: node count must be positive");
    detail::require(features_.rows() == node_count_,
                    "AttributedGraph: feature matrix has " + std::to_string(features_.rows()) +
                        " rows for " + std::to_string(node_count_) + " nodes");
    for (auto& e : edges) {
      detail::require(e.u < node_count_ && e.v < node_count_,
                      "AttributedGraph: edge endpoint out of range");
      detail::require(e.u != e.v, "AttributedGraph: self-loops are not stored");
      detail::require(e.weight > 0.0, "AttributedGraph: edge weights must be positive");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      detail::require(edges[i].u != edges[i - 1].u || edges[i].v != edges[i - 1].v,
                      "AttributedGraph: duplicate edge");
    }
    edges_ = std::move(edges);

    adjacency_.assign(node_count_, {});
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back({e.v, e.weight});
      adjacency_[e.v].push_back({e.u, e.weight});
      if (e.weight != 1.0) unit_weights_ = false;
    }
    for (auto& nbrs : adjacency_) {
      std::sort(nbrs.begin(), nbrs.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
  }

  // Unit-weight graph with a single constant feature per node.
  static AttributedGraph from_edges(std::size_t node_count,
                                    const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                    int label = 0) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
    return AttributedGraph(node_count, std::move(edges), Matrix(node_count, 1, 1.0), label);
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t feature_dim() const { return features_.cols(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId u) const { return adjacency_[u]; }
  std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
  const Matrix& features() const { return features_; }
  int label() const { return label_; }
  bool has_unit_weights() const { return unit_weights_; }

  AttributedGraph with_features(Matrix features) const {
    return AttributedGraph(node_count_, edges_, std::move(features), label_);
  }

  AttributedGraph with_label(int label) const {
    AttributedGraph g = *this;
    g.label_ = label;
    return g;
  }

  // Dense A with A_uv = w_uv.
  Matrix adjacency_matrix() const {
    Matrix a(node_count_, node_count_);
    for (const auto& e : edges_) {
      a(e.u, e.v) = e.weight;
      a(e.v, e.u) = e.weight;
    }
    return a;
  }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), Neighbor{v, 0.0},
                              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }

  friend bool operator==(const AttributedGraph& a, const AttributedGraph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ && a.features_ == b.features_ &&
           a.label_ == b.label_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  Matrix features_;
  int label_ = 0;
  bool unit_weights_ = true;
};

// All-pairs shortest-path distances. Unreachable pairs hold `unreachable`
// (+infinity), which compares greater than every finite distance.
class DistanceMatrix {
 public:
  static constexpr double unreachable = std::numeric_limits<double>::infinity();

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : values_(n, n, unreachable) {
    for (std::size_t i = 0; i < n; ++i) values_(i, i) = 0.0;
  }
  explicit DistanceMatrix(Matrix values) : values_(std::move(values)) {
    detail::require(values_.rows() == values_.cols(), "DistanceMatrix: matrix must be square");
  }

  std::size_t size() const { return values_.rows(); }
  double operator()(NodeId u, NodeId v) const { return values_(u, v); }
  double& operator()(NodeId u, NodeId v) { return values_(u, v); }
  bool reachable(NodeId u, NodeId v) const { return values_(u, v) != unreachable; }
  const Matrix& matrix() const { return values_; }

 private:
  Matrix values_;
};

// Distances from `source`: BFS for unit-weight graphs, Dijkstra otherwise.
inline std::vector<double> single_source_distances(const AttributedGraph& g, NodeId source) {
  detail::require(source < g.node_count(), "single_source_distances: node out of range");
  std::vector<double> dist(g.node_count(), DistanceMatrix::unreachable);
  dist[source] = 0.0;
  if (g.has_unit_weights()) {
    std::queue<NodeId> frontier;
    frontier.push(source);
    while (!frontier.empty()) {
      NodeId u = frontier.front();
      frontier.pop();
      for (const auto& nb : g.neighbors(u)) {
        if (dist[nb.node] == DistanceMatrix::unreachable) {
          dist[nb.node] = dist[u] + 1.0;
          frontier.push(nb.node);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      double nd = d + nb.weight;
      if (nd < dist[nb.node]) {
        dist[nb.node] = nd;
        heap.push({nd, nb.node});
      }
    }
  }
  return dist;
}

inline DistanceMatrix shortest_paths(const AttributedGraph& g) {
  DistanceMatrix d(g.node_count());
  for (NodeId s = 0; s < g.node_count(); ++s) {
    auto row = single_source_distances(g, s);
    for (NodeId t = 0; t < g.node_count(); ++t) d(s, t) = row[t];
  }
  return d;
}

// Subgraph induced on `nodes` (ascending original ids). nodes[i] is the
// original id of node i in `graph`.
struct InducedSubgraph {
  AttributedGraph graph;
  std::vector<NodeId> nodes;
};

inline InducedSubgraph induced_subgraph(const AttributedGraph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  constexpr NodeId absent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> local(g.node_count(), absent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    detail::require(nodes[i] < g.node_count(), "induced_subgraph: node out of range");
    local[nodes[i]] = i;
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (local[e.u] != absent && local[e.v] != absent) {
      edges.push_back({local[e.u], local[e.v], e.weight});
    }
  }
  return {AttributedGraph(nodes.size(), std::move(edges), select_rows(g.features(), nodes), g.label()),
          std::move(nodes)};
}

// Induced subgraph on {v : d(u, v) <= k}.
inline InducedSubgraph k_hop_neighborhood(const AttributedGraph& g, NodeId u, unsigned k) {
  detail::require(k >= 1, "k_hop_neighborhood: k must be at least 1");
  auto dist = single_source_distances(g, u);
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (dist[v] <= static_cast<double>(k)) nodes.push_back(v);
  }
  return induced_subgraph(g, std::move(nodes));
}

// Weighted degree: row sums of A.
inline std::vector<double> degree_centrality(const AttributedGraph& g) {
  std::vector<double> deg(g.node_count(), 0.0);
  for (const auto& e : g.edges()) {
    deg[e.u] += e.weight;
    deg[e.v] += e.weight;
  }
  return deg;
}

// Unnormalized betweenness over unordered source/target pairs (Brandes'
// dependency accumulation). Disconnected pairs contribute nothing.
inline std::vector<double> betweenness_centrality(const AttributedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> centrality(n, 0.0);
  std::vector<double> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), DistanceMatrix::unreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();
    dist[s] = 0.0;
    sigma[s] = 1.0;

    if (g.has_unit_weights()) {
      std::queue<NodeId> frontier;
      frontier.push(s);
      while (!frontier.empty()) {
        NodeId v = frontier.front();
        frontier.pop();
        order.push_back(v);
        for (const auto& nb : g.neighbors(v)) {
          NodeId w = nb.node;
          if (dist[w] == DistanceMatrix::unreachable) {
            dist[w] = dist[v] + 1.0;
            frontier.push(w);
          }
          if (dist[w] == dist[v] + 1.0) {
            sigma[w] += sigma[v];
            preds[w].push_back(v);
          }
        }
      }
    } else {
      using Item = std::pair<double, NodeId>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      std::vector<bool> settled(n, false);
      heap.push({0.0, s});
      while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (settled[v] || d > dist[v]) continue;
        settled[v] = true;
        order.push_back(v);
        for (const auto& nb : g.neighbors(v)) {
          NodeId w = nb.node;
          double nd = dist[v] + nb.weight;
          if (nd < dist[w]) {
            dist[w] = nd;
            sigma[w] = sigma[v];
            preds[w].assign(1, v);
            heap.push({nd, w});
          } else if (nd == dist[w] && !settled[w]) {
            sigma[w] += sigma[v];
            preds[w].push_back(v);
          }
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  for (auto& c : centrality) c *= 0.5;
  return centrality;
}

}  // namespace topopool
