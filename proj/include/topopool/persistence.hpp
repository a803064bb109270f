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
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/filtration.hpp"
#include "topopool/tudataset.hpp"

namespace topopool {

struct PersistencePoint {
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();

  bool essential() const { return std::isinf(death); }
  double persistence() const { return death - birth; }

  friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
  friend auto operator<=>(const PersistencePoint&, const PersistencePoint&) = default;
};

// Birth/death pairs per homology dimension (0 and 1). Zero-persistence pairs
// are never stored; essential classes have infinite death.
class PersistenceDiagram {
 public:
  static constexpr int max_dim = 1;

  void add(int dim, double birth, double death) {
    detail::require(dim >= 0 && dim <= max_dim, "PersistenceDiagram: dimension must be 0 or 1");
    detail::require(birth >= 0.0, "PersistenceDiagram: negative birth");
    if (!(death > birth)) return;
    points_[static_cast<std::size_t>(dim)].push_back({birth, death});
  }

  std::span<const PersistencePoint> points(int dim) const { return points_[static_cast<std::size_t>(dim)]; }
  std::size_t size() const { return points_[0].size() + points_[1].size(); }
  bool empty() const { return size() == 0; }

  std::size_t essential_count(int dim) const {
    auto pts = points(dim);
    return static_cast<std::size_t>(std::count_if(pts.begin(), pts.end(), [](const auto& p) { return p.essential(); }));
  }

  // Same diagram with each dimension's points sorted, for multiset comparison.
  PersistenceDiagram canonical() const {
    PersistenceDiagram d = *this;
    for (auto& pts : d.points_) std::sort(pts.begin(), pts.end());
    return d;
  }

  // Number of dim-`dim` classes alive at t: birth <= t < death.
  std::size_t betti(int dim, double t) const {
    auto pts = points(dim);
    return static_cast<std::size_t>(
        std::count_if(pts.begin(), pts.end(), [t](const auto& p) { return p.birth <= t && t < p.death; }));
  }

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  std::array<std::vector<PersistencePoint>, max_dim + 1> points_;
};

// "dim,birth,death" rows after a header line; essential deaths print as inf.
inline std::string to_csv(const PersistenceDiagram& d) {
  std::string out = "dim,birth,death\n";
  for (int dim = 0; dim <= PersistenceDiagram::max_dim; ++dim) {
    for (const auto& p : d.points(dim)) {
      out += std::to_string(dim) + "," + detail::format_double(p.birth) + "," +
             (p.essential() ? std::string("inf") : detail::format_double(p.death)) + "\n";
    }
  }
  return out;
}

// Persistence via GF(2) column reduction of the boundary matrix in filtration
// order. Columns are sparse sorted index lists; `owner[low]` maps a pivot row
// to the column that holds it.
inline PersistenceDiagram reduce_boundary(const Filtration& f) {
  f.validate();
  const std::size_t m = f.size();
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> index_of;
  index_of.reserve(m);
  for (std::size_t i = 0; i < m; ++i) index_of.emplace(f[i].simplex, static_cast<std::uint32_t>(i));

  constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::vector<std::uint32_t>> reduced(m);
  std::vector<std::uint32_t> owner(m, none);
  std::vector<bool> paired(m, false);
  std::vector<std::uint32_t> scratch;
  PersistenceDiagram diagram;

  for (std::size_t j = 0; j < m; ++j) {
    auto& col = reduced[j];
    for (const auto& face : f[j].simplex.facets()) col.push_back(index_of.at(face));
    std::sort(col.begin(), col.end());
    while (!col.empty() && owner[col.back()] != none) {
      const auto& other = reduced[owner[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      const std::uint32_t low = col.back();
      owner[low] = static_cast<std::uint32_t>(j);
      paired[low] = true;
      paired[j] = true;
      const int dim = f[low].simplex.dim();
      if (dim <= PersistenceDiagram::max_dim) diagram.add(dim, f[low].value, f[j].value);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const int dim = f[i].simplex.dim();
    if (!paired[i] && dim <= PersistenceDiagram::max_dim)
      diagram.add(dim, f[i].value, std::numeric_limits<double>::infinity());
  }
  return diagram;
}

// Dimension-0 persistence by union-find over edges in filtration order. On a
// merge the younger component (later birth, then later filtration position)
// dies.
inline PersistenceDiagram h0_union_find(const Filtration& f) {
  const std::size_t m = f.size();
  std::unordered_map<NodeId, std::uint32_t> slot;
  std::vector<std::uint32_t> parent;
  std::vector<double> birth;
  for (std::size_t i = 0; i < m; ++i) {
    if (f[i].simplex.dim() != 0) continue;
    slot.emplace(f[i].simplex[0], static_cast<std::uint32_t>(parent.size()));
    parent.push_back(static_cast<std::uint32_t>(parent.size()));
    birth.push_back(f[i].value);
  }
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  PersistenceDiagram diagram;
  for (std::size_t i = 0; i < m; ++i) {
    if (f[i].simplex.dim() != 1) continue;
    auto a = find(slot.at(f[i].simplex[0]));
    auto b = find(slot.at(f[i].simplex[1]));
    if (a == b) continue;
    // Slots follow filtration order, so the larger slot is the younger root
    // whenever births tie.
    const bool a_younger = birth[a] > birth[b] || (birth[a] == birth[b] && a > b);
    auto young = a_younger ? a : b;
    auto old = a_younger ? b : a;
    diagram.add(0, birth[young], f[i].value);
    parent[young] = old;
  }
  for (std::uint32_t x = 0; x < parent.size(); ++x)
    if (find(x) == x) diagram.add(0, birth[x], std::numeric_limits<double>::infinity());
  return diagram;
}

}  // namespace topopool
