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
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/filtration.hpp"
#include "topopool/matrix.hpp"
#include "topopool/persistence.hpp"
#include "topopool/tudataset.hpp"

namespace topopool {

enum class ScoreVariant {
  unweighted,  // sum of lifespans
  arctan,      // sum of arctan(C * lifespan^eta)
};

inline std::string_view to_string(ScoreVariant v) { return v == ScoreVariant::unweighted ? "unweighted" : "arctan"; }

inline ScoreVariant parse_score_variant(std::string_view s) {
  if (s == "unweighted") return ScoreVariant::unweighted;
  if (s == "arctan") return ScoreVariant::arctan;
  throw ContractViolation("unknown score variant '" + std::string(s) + "'");
}

struct ScoreConfig {
  ScoreVariant variant = ScoreVariant::unweighted;
  double c = 0.1;
  double eta = 2.0;
  double essential_cap = 1.0;  // replaces infinite deaths

  void validate() const {
    detail::require(c >= 0.0, "ScoreConfig: C must be non-negative");
    detail::require(eta >= 1.0, "ScoreConfig: eta must be at least 1");
    detail::require(essential_cap > 0.0, "ScoreConfig: essential cap must be positive");
  }
};

// Death value used for essential classes: the largest filtration value, or 1
// when the filtration never leaves 0.
inline double essential_cap_for(const Filtration& f) {
  const double m = f.max_value();
  return m > 0.0 ? m : 1.0;
}

inline double capped_death(const PersistencePoint& p, double cap) { return p.essential() ? cap : p.death; }

// Total (optionally arctan-weighted) persistence over dimensions 0 and 1.
inline double topological_score(const PersistenceDiagram& d, const ScoreConfig& cfg) {
  cfg.validate();
  double total = 0.0;
  for (int dim = 0; dim <= PersistenceDiagram::max_dim; ++dim) {
    for (const auto& p : d.points(dim)) {
      const double life = std::max(0.0, capped_death(p, cfg.essential_cap) - p.birth);
      total += cfg.variant == ScoreVariant::unweighted ? life : std::atan(cfg.c * std::pow(life, cfg.eta));
    }
  }
  return total;
}

enum class PixelQuadrature {
  exact,         // closed-form Gaussian integral over each cell
  center_point,  // surface at the cell center times the cell area
};

// p x p grid over [0, alpha_max]^2 in (birth, persistence) coordinates.
// Row r covers persistence [r h, (r + 1) h), column c covers birth [c h, (c + 1) h),
// with h = alpha_max / p. Stored row-major.
struct PersistenceImage {
  std::size_t resolution = 0;
  double alpha_max = 1.0;
  double bandwidth = 1.0;
  std::vector<double> pixels;

  double operator()(std::size_t row, std::size_t col) const { return pixels[row * resolution + col]; }
  double total_mass() const {
    double s = 0.0;
    for (double v : pixels) s += v;
    return s;
  }
  Matrix flattened() const { return Matrix::row_vector(pixels); }
};

namespace detail {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

struct ImagePoint {
  double x;       // birth
  double y;       // persistence
  double weight;  // linear in persistence, zero on the diagonal
};

inline std::vector<ImagePoint> image_points(const PersistenceDiagram& d, double alpha_max) {
  std::vector<ImagePoint> pts;
  for (int dim = 0; dim <= PersistenceDiagram::max_dim; ++dim) {
    for (const auto& p : d.points(dim)) {
      const double y = capped_death(p, alpha_max) - p.birth;
      const double w = std::clamp(y / alpha_max, 0.0, 1.0);
      if (w > 0.0) pts.push_back({p.birth, y, w});
    }
  }
  return pts;
}

}  // namespace detail

// Persistence surface  sum_mu f(mu) exp(-|z - mu|^2 / (2 xi^2))  integrated per grid cell.
inline PersistenceImage persistence_image(const PersistenceDiagram& d, std::size_t resolution, double bandwidth,
                                          double alpha_max, PixelQuadrature quadrature = PixelQuadrature::exact) {
  detail::require(resolution >= 1, "persistence_image: resolution must be at least 1");
  detail::require(bandwidth > 0.0, "persistence_image: bandwidth must be positive");
  detail::require(alpha_max > 0.0, "persistence_image: alpha_max must be positive");
  PersistenceImage img{resolution, alpha_max, bandwidth, std::vector<double>(resolution * resolution, 0.0)};
  const double h = alpha_max / static_cast<double>(resolution);
  const double two_var = 2.0 * bandwidth * bandwidth;

  for (const auto& pt : detail::image_points(d, alpha_max)) {
    if (quadrature == PixelQuadrature::exact) {
      std::vector<double> gx(resolution), gy(resolution);
      for (std::size_t i = 0; i < resolution; ++i) {
        const double lo = static_cast<double>(i) * h;
        const double hi = lo + h;
        gx[i] = detail::normal_cdf((hi - pt.x) / bandwidth) - detail::normal_cdf((lo - pt.x) / bandwidth);
        gy[i] = detail::normal_cdf((hi - pt.y) / bandwidth) - detail::normal_cdf((lo - pt.y) / bandwidth);
      }
      const double scale = pt.weight * std::numbers::pi * two_var;
      for (std::size_t r = 0; r < resolution; ++r)
        for (std::size_t c = 0; c < resolution; ++c) img.pixels[r * resolution + c] += scale * gy[r] * gx[c];
    } else {
      for (std::size_t r = 0; r < resolution; ++r) {
        const double cy = (static_cast<double>(r) + 0.5) * h;
        for (std::size_t c = 0; c < resolution; ++c) {
          const double cx = (static_cast<double>(c) + 0.5) * h;
          const double dist2 = (cx - pt.x) * (cx - pt.x) + (cy - pt.y) * (cy - pt.y);
          img.pixels[r * resolution + c] += pt.weight * std::exp(-dist2 / two_var) * h * h;
        }
      }
    }
  }
  return img;
}

// Row-major CSV, one grid row per line.
inline std::string to_csv(const PersistenceImage& img) {
  std::string out;
  for (std::size_t r = 0; r < img.resolution; ++r) {
    for (std::size_t c = 0; c < img.resolution; ++c) {
      if (c) out += ",";
      out += detail::format_double(img(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace topopool
