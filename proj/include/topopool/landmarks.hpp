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
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/graph.hpp"

namespace topopool {

enum class LandmarkStrategy { random, degree, betweenness };

inline std::string_view to_string(LandmarkStrategy s) {
  switch (s) {
    case LandmarkStrategy::random: return "random";
    case LandmarkStrategy::degree: return "degree";
    case LandmarkStrategy::betweenness: return "betweenness";
  }
  return "?";
}

inline LandmarkStrategy parse_landmark_strategy(std::string_view s) {
  if (s == "random") return LandmarkStrategy::random;
  if (s == "degree") return LandmarkStrategy::degree;
  if (s == "betweenness") return LandmarkStrategy::betweenness;
  throw ContractViolation("unknown landmark strategy '" + std::string(s) + "'");
}

// ceil(fraction * n) clamped to [1, n]. A small slack keeps products such as
// 0.3 * 10 = 3.0000000000000004 from rounding up.
inline std::size_t fraction_count(std::size_t n, double fraction) {
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  const auto k = static_cast<std::size_t>(std::max(raw, 1.0));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n, 1));
}

struct LandmarkSet {
  LandmarkStrategy strategy = LandmarkStrategy::degree;
  double fraction = 1.0;
  std::vector<NodeId> nodes;  // ascending, unique

  std::size_t size() const { return nodes.size(); }
  bool contains(NodeId v) const { return std::binary_search(nodes.begin(), nodes.end(), v); }
};

// Indices of the k largest scores, ties broken by ascending index.
inline std::vector<NodeId> top_k_by_score(const std::vector<double>& scores, std::size_t k) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  return order;
}

inline LandmarkSet select_landmarks(const AttributedGraph& g, LandmarkStrategy strategy, double psi,
                                    std::uint64_t seed = 0) {
  detail::require(psi > 0.0 && psi <= 1.0, "select_landmarks: psi must lie in (0, 1]");
  const std::size_t n = g.node_count();
  const std::size_t k = fraction_count(n, psi);
  LandmarkSet set{strategy, psi, {}};
  switch (strategy) {
    case LandmarkStrategy::random: {
      // Partial Fisher-Yates: the first k slots are a uniform k-subset.
      std::vector<NodeId> pool(n);
      std::iota(pool.begin(), pool.end(), NodeId{0});
      std::mt19937_64 rng(seed);
      for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      set.nodes.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    }
    case LandmarkStrategy::degree:
      set.nodes = top_k_by_score(degree_centrality(g), k);
      break;
    case LandmarkStrategy::betweenness:
      set.nodes = top_k_by_score(betweenness_centrality(g), k);
      break;
  }
  std::sort(set.nodes.begin(), set.nodes.end());
  return set;
}

}  // namespace topopool
