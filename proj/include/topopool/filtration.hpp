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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/graph.hpp"
#include "topopool/tudataset.hpp"

namespace topopool {

// Simplex of dimension 0..2 stored as a strictly increasing vertex tuple.
class Simplex {
 public:
  static constexpr std::size_t max_vertices = 3;

  Simplex() = default;
  Simplex(std::initializer_list<NodeId> vertices) : Simplex(std::span<const NodeId>(vertices.begin(), vertices.size())) {}
  explicit Simplex(std::span<const NodeId> vertices) {
    detail::require(!vertices.empty() && vertices.size() <= max_vertices,
                    "Simplex: expected 1 to 3 vertices");
    size_ = static_cast<std::uint8_t>(vertices.size());
    std::copy(vertices.begin(), vertices.end(), v_.begin());
    std::sort(v_.begin(), v_.begin() + size_);
    for (std::size_t i = 1; i < size_; ++i)
      detail::require(v_[i - 1] < v_[i], "Simplex: repeated vertex");
  }

  std::size_t size() const { return size_; }
  int dim() const { return static_cast<int>(size_) - 1; }
  NodeId operator[](std::size_t i) const { return v_[i]; }
  const NodeId* begin() const { return v_.data(); }
  const NodeId* end() const { return v_.data() + size_; }
  bool contains(NodeId v) const { return std::find(begin(), end(), v) != end(); }

  // Codimension-1 faces; empty for vertices.
  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    if (size_ < 2) return out;
    for (std::size_t skip = 0; skip < size_; ++skip) {
      std::array<NodeId, max_vertices> f{};
      std::size_t k = 0;
      for (std::size_t i = 0; i < size_; ++i)
        if (i != skip) f[k++] = v_[i];
      out.emplace_back(std::span<const NodeId>(f.data(), k));
    }
    return out;
  }

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  // Orders by dimension, then lexicographically.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<NodeId, max_vertices> v_{};
  std::uint8_t size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const {
    std::uint64_t h = 1469598103934665603ULL ^ s.size();
    for (NodeId v : s) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct FilteredSimplex {
  Simplex simplex;
  double value = 0.0;

  friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

// Simplices with filtration values, kept sorted by (value, dimension,
// lexicographic vertices). Construction does not check validity; call
// `validate()` or `is_valid()` for the face/monotonicity invariants.
class Filtration {
 public:
  Filtration() = default;
  explicit Filtration(std::vector<FilteredSimplex> simplices) : simplices_(std::move(simplices)) {
    std::sort(simplices_.begin(), simplices_.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.simplex < b.simplex;
    });
  }

  std::span<const FilteredSimplex> simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  const FilteredSimplex& operator[](std::size_t i) const { return simplices_[i]; }
  auto begin() const { return simplices_.begin(); }
  auto end() const { return simplices_.end(); }

  std::size_t count(int dim) const {
    return static_cast<std::size_t>(std::count_if(simplices_.begin(), simplices_.end(),
                                                  [dim](const auto& s) { return s.simplex.dim() == dim; }));
  }

  // Largest filtration value, or 0 for an empty filtration.
  double max_value() const { return simplices_.empty() ? 0.0 : simplices_.back().value; }

  // Empty string when valid; otherwise a description of the first violation.
  std::string violation() const {
    std::unordered_map<Simplex, double, SimplexHash> value_of;
    value_of.reserve(simplices_.size());
    for (const auto& fs : simplices_) {
      if (!std::isfinite(fs.value) || fs.value < 0.0) return "non-finite or negative filtration value";
      if (!value_of.emplace(fs.simplex, fs.value).second) return "duplicate simplex";
    }
    for (const auto& fs : simplices_) {
      for (const auto& face : fs.simplex.facets()) {
        auto it = value_of.find(face);
        if (it == value_of.end()) return "missing face of a simplex";
        if (it->second > fs.value) return "face enters after its coface";
      }
    }
    return {};
  }

  bool is_valid() const { return violation().empty(); }

  void validate() const {
    auto why = violation();
    if (!why.empty()) throw ContractViolation("invalid filtration: " + why);
  }

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  std::vector<FilteredSimplex> simplices_;
};

// One simplex per line: "dim v0 [v1 [v2]] value".
inline std::string to_text(const Filtration& f) {
  std::string out;
  for (const auto& fs : f) {
    out += std::to_string(fs.simplex.dim());
    for (NodeId v : fs.simplex) out += " " + std::to_string(v);
    out += " " + detail::format_double(fs.value) + "\n";
  }
  return out;
}

inline Filtration filtration_from_text(std::string_view text) {
  std::vector<FilteredSimplex> simplices;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (detail::trim(line).empty()) continue;
    std::istringstream fields(line);
    int dim = -1;
    if (!(fields >> dim) || dim < 0 || dim > 2)
      throw ParseError("filtration line " + std::to_string(number) + ": bad dimension");
    std::array<NodeId, 3> v{};
    for (int i = 0; i <= dim; ++i) {
      if (!(fields >> v[static_cast<std::size_t>(i)]))
        throw ParseError("filtration line " + std::to_string(number) + ": missing vertex");
    }
    std::string value_text;
    if (!(fields >> value_text))
      throw ParseError("filtration line " + std::to_string(number) + ": missing value");
    double value = std::stod(value_text);
    simplices.push_back({Simplex(std::span<const NodeId>(v.data(), static_cast<std::size_t>(dim + 1))), value});
  }
  return Filtration(std::move(simplices));
}

}  // namespace topopool
