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
#include <unordered_map>
#include <utility>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/filtration.hpp"
#include "topopool/graph.hpp"
#include "topopool/landmarks.hpp"

namespace topopool {

// Nodes w with d(w, v) <= d(w, u) for every v in sigma and every landmark u
// outside sigma. A witness must reach every vertex of sigma.
inline std::vector<NodeId> weak_witnesses(const Simplex& sigma, const DistanceMatrix& d, const LandmarkSet& landmarks) {
  for (NodeId v : sigma)
    detail::require(landmarks.contains(v), "weak_witnesses: simplex vertex is not a landmark");
  std::vector<NodeId> out;
  for (NodeId w = 0; w < d.size(); ++w) {
    double farthest = 0.0;
    for (NodeId v : sigma) farthest = std::max(farthest, d(w, v));
    if (!std::isfinite(farthest)) continue;
    bool witnessed = true;
    for (NodeId u : landmarks.nodes) {
      if (!sigma.contains(u) && d(w, u) < farthest) {
        witnessed = false;
        break;
      }
    }
    if (witnessed) out.push_back(w);
  }
  return out;
}

namespace detail {

// Calls fn(chosen) for every `need`-subset of items[first, last).
template <typename Fn>
void for_each_subset(const std::vector<NodeId>& items, std::size_t first, std::size_t last, std::size_t need,
                     std::vector<NodeId>& chosen, Fn&& fn) {
  if (need == 0) {
    fn(chosen);
    return;
  }
  for (std::size_t i = first; i + need <= last; ++i) {
    chosen.push_back(items[i]);
    for_each_subset(items, i + 1, last, need - 1, chosen, fn);
    chosen.pop_back();
  }
}

}  // namespace detail

// Filtered weak witness complex on the landmarks (dimension <= max_dim <= 2).
//
// A simplex's raw value is the smallest, over its weak witnesses w, of
// max_{v in sigma} d(w, v). Landmarks enter at 0. A simplex is kept only when
// it and all of its faces are witnessed, and its value is raised to the
// largest face value so the filtration is monotone.
//
// Per witness w the witnessed k-simplices are exactly the k-sets consisting of
// every landmark strictly closer than the k-th nearest distance m plus a
// choice among the landmarks at distance exactly m, so the construction costs
// O(N |L| log |L|) plus the number of witnessed simplices.
inline Filtration witness_filtration(const DistanceMatrix& d, const LandmarkSet& landmarks, int max_dim = 2) {
  detail::require(!landmarks.nodes.empty(), "witness_filtration: landmark set is empty");
  detail::require(max_dim >= 0 && max_dim <= 2, "witness_filtration: max_dim must be in [0, 2]");
  for (NodeId l : landmarks.nodes) detail::require(l < d.size(), "witness_filtration: landmark out of range");

  std::unordered_map<Simplex, double, SimplexHash> raw;
  std::vector<std::pair<double, NodeId>> by_distance;
  std::vector<NodeId> sorted_ids;
  std::vector<NodeId> chosen;
  const std::size_t max_size = static_cast<std::size_t>(max_dim) + 1;

  for (NodeId w = 0; w < d.size(); ++w) {
    by_distance.clear();
    for (NodeId l : landmarks.nodes)
      if (std::isfinite(d(w, l))) by_distance.emplace_back(d(w, l), l);
    std::sort(by_distance.begin(), by_distance.end());
    sorted_ids.clear();
    for (const auto& [dist, l] : by_distance) sorted_ids.push_back(l);

    for (std::size_t k = 2; k <= std::min(max_size, by_distance.size()); ++k) {
      const double m = by_distance[k - 1].first;
      std::size_t closer = 0;
      while (by_distance[closer].first < m) ++closer;
      std::size_t tied_end = closer;
      while (tied_end < by_distance.size() && by_distance[tied_end].first == m) ++tied_end;

      chosen.assign(sorted_ids.begin(), sorted_ids.begin() + static_cast<std::ptrdiff_t>(closer));
      detail::for_each_subset(sorted_ids, closer, tied_end, k - closer, chosen, [&](const std::vector<NodeId>& vs) {
        Simplex s{std::span<const NodeId>(vs)};
        auto [it, inserted] = raw.emplace(s, m);
        if (!inserted && m < it->second) it->second = m;
      });
    }
  }

  std::unordered_map<Simplex, double, SimplexHash> value_of;
  std::vector<FilteredSimplex> out;
  for (NodeId l : landmarks.nodes) {
    value_of.emplace(Simplex{l}, 0.0);
    out.push_back({Simplex{l}, 0.0});
  }
  for (std::size_t size = 2; size <= max_size; ++size) {
    for (const auto& [s, value] : raw) {
      if (s.size() != size) continue;
      double v = value;
      bool closed = true;
      for (const auto& face : s.facets()) {
        auto it = value_of.find(face);
        if (it == value_of.end()) {
          closed = false;
          break;
        }
        v = std::max(v, it->second);
      }
      if (!closed) continue;
      out.push_back({s, v});
    }
    for (std::size_t i = out.size(); i-- > 0 && out[i].simplex.size() == size;) value_of.emplace(out[i].simplex, out[i].value);
  }
  return Filtration(std::move(out));
}

inline Filtration witness_filtration(const AttributedGraph& g_hat, const LandmarkSet& landmarks, int max_dim = 2) {
  return witness_filtration(shortest_paths(g_hat), landmarks, max_dim);
}

}  // namespace topopool
