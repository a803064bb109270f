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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "topopool/error.hpp"
#include "topopool/features.hpp"
#include "topopool/landmarks.hpp"
#include "topopool/nn/layers.hpp"

namespace topopool::model {

// What the pooled graph convolution consumes: rows of the final GNN
// embedding, or rows of the raw node features.
enum class PoolInput { embedding, features };

inline std::string_view to_string(PoolInput p) { return p == PoolInput::embedding ? "embedding" : "features"; }

struct ModelConfig {
  // Stacked k-power GCN.
  std::size_t gnn_layers = 3;
  std::size_t hidden_dim = 32;
  unsigned power_k = 1;
  bool literal_normalization = false;  // D^-1/2 A D^+1/2 instead of the symmetric form

  // Node similarity shared by both branches.
  nn::SimilarityKind similarity = nn::SimilarityKind::cosine;
  double gamma = 1.0;

  // Topological pooling branch.
  double phi = 0.5;
  ScoreVariant score_variant = ScoreVariant::unweighted;
  double score_c = 0.1;
  double score_eta = 2.0;
  double pool_ratio = 0.5;
  std::size_t pool_dim = 32;
  PoolInput pool_input = PoolInput::embedding;

  // Witness branch.
  LandmarkStrategy landmarks = LandmarkStrategy::degree;
  double psi = 0.3;
  double zeta = 0.5;
  bool zeta_literal = false;  // keep pairs with S <= zeta instead of S >= zeta
  std::size_t image_resolution = 5;
  double image_bandwidth_scale = 0.2;  // xi = scale * alpha_max
  std::size_t witness_dim = 32;

  // Head and optimisation.
  double dropout = 0.0;
  double lr = 0.005;
  std::size_t batch_size = 8;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;

  // Ablations.
  bool no_tpgcl = false;
  bool no_wit_tl = false;
  bool no_attention = false;
  bool vr_global = false;

  void validate() const {
    auto check = [](bool ok, const std::string& what) {
      if (!ok) throw ConfigError(what);
    };
    check(gnn_layers >= 1 && hidden_dim >= 1 && pool_dim >= 1 && witness_dim >= 1, "all dimensions must be >= 1");
    check(power_k >= 1, "power_k must be >= 1");
    check(pool_ratio > 0.0 && pool_ratio <= 1.0, "pool_ratio must lie in (0, 1]");
    check(psi > 0.0 && psi <= 1.0, "psi must lie in (0, 1]");
    check(similarity == nn::SimilarityKind::cosine || gamma > 0.0, "gaussian similarity needs gamma > 0");
    check(score_c >= 0.0, "score_c must be >= 0");
    check(score_eta >= 1.0, "score_eta must be >= 1");
    check(image_resolution >= 1, "image_resolution must be >= 1");
    check(image_bandwidth_scale > 0.0, "image_bandwidth_scale must be > 0");
    check(dropout >= 0.0 && dropout <= 0.5, "dropout must lie in [0, 0.5]");
    check(lr > 0.0, "lr must be > 0");
    check(batch_size >= 1, "batch_size must be >= 1");
    check(!(no_tpgcl && no_wit_tl), "no_tpgcl and no_wit_tl together leave an empty model");
  }

  ScoreConfig score_config(double essential_cap = 1.0) const {
    return {score_variant, score_c, score_eta, essential_cap};
  }

  nn::Normalization normalization() const {
    return literal_normalization ? nn::Normalization::literal : nn::Normalization::symmetric;
  }
};

inline nlohmann::json to_json(const ModelConfig& c) {
  return {
      {"gnn_layers", c.gnn_layers},
      {"hidden_dim", c.hidden_dim},
      {"power_k", c.power_k},
      {"literal_normalization", c.literal_normalization},
      {"similarity", std::string(nn::to_string(c.similarity))},
      {"gamma", c.gamma},
      {"phi", c.phi},
      {"score_variant", std::string(to_string(c.score_variant))},
      {"score_c", c.score_c},
      {"score_eta", c.score_eta},
      {"pool_ratio", c.pool_ratio},
      {"pool_dim", c.pool_dim},
      {"pool_input", std::string(to_string(c.pool_input))},
      {"landmarks", std::string(to_string(c.landmarks))},
      {"psi", c.psi},
      {"zeta", c.zeta},
      {"zeta_literal", c.zeta_literal},
      {"image_resolution", c.image_resolution},
      {"image_bandwidth_scale", c.image_bandwidth_scale},
      {"witness_dim", c.witness_dim},
      {"dropout", c.dropout},
      {"lr", c.lr},
      {"batch_size", c.batch_size},
      {"epochs", c.epochs},
      {"seed", c.seed},
      {"no_tpgcl", c.no_tpgcl},
      {"no_wit_tl", c.no_wit_tl},
      {"no_attention", c.no_attention},
      {"vr_global", c.vr_global},
  };
}

// Overrides fields of `base` from a flat JSON object. Keys in `extra_keys`
// are ignored (the caller consumes them); any other unknown key is rejected.
inline ModelConfig apply_json(ModelConfig base, const nlohmann::json& j, const std::set<std::string>& extra_keys = {}) {
  if (!j.is_object()) throw ConfigError("config must be a flat JSON object");
  const nlohmann::json known = to_json(base);
  std::vector<std::string> unknown;
  for (const auto& [key, value] : j.items())
    if (!known.contains(key) && !extra_keys.contains(key)) unknown.push_back(key);
  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("unknown config keys: " + list);
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    get("gnn_layers", base.gnn_layers);
    get("hidden_dim", base.hidden_dim);
    get("power_k", base.power_k);
    get("literal_normalization", base.literal_normalization);
    if (j.contains("similarity")) base.similarity = nn::parse_similarity_kind(j.at("similarity").get<std::string>());
    get("gamma", base.gamma);
    get("phi", base.phi);
    if (j.contains("score_variant")) base.score_variant = parse_score_variant(j.at("score_variant").get<std::string>());
    get("score_c", base.score_c);
    get("score_eta", base.score_eta);
    get("pool_ratio", base.pool_ratio);
    get("pool_dim", base.pool_dim);
    if (j.contains("pool_input")) {
      const auto s = j.at("pool_input").get<std::string>();
      if (s != "embedding" && s != "features") throw ConfigError("pool_input must be 'embedding' or 'features'");
      base.pool_input = s == "embedding" ? PoolInput::embedding : PoolInput::features;
    }
    if (j.contains("landmarks")) base.landmarks = parse_landmark_strategy(j.at("landmarks").get<std::string>());
    get("psi", base.psi);
    get("zeta", base.zeta);
    get("zeta_literal", base.zeta_literal);
    get("image_resolution", base.image_resolution);
    get("image_bandwidth_scale", base.image_bandwidth_scale);
    get("witness_dim", base.witness_dim);
    get("dropout", base.dropout);
    get("lr", base.lr);
    get("batch_size", base.batch_size);
    get("epochs", base.epochs);
    get("seed", base.seed);
    get("no_tpgcl", base.no_tpgcl);
    get("no_wit_tl", base.no_wit_tl);
    get("no_attention", base.no_attention);
    get("vr_global", base.vr_global);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  base.validate();
  return base;
}

// Per-dataset settings: GNN depth, hidden width and batch size as published
// for each benchmark, landmark strategy per the best sensitivity result, and
// module defaults for every value that is not published.
inline ModelConfig preset(std::string_view dataset) {
  ModelConfig c;
  auto shape = [&](std::size_t layers, std::size_t hidden, std::size_t batch) {
    c.gnn_layers = layers;
    c.hidden_dim = hidden;
    c.pool_dim = hidden;
    c.batch_size = batch;
  };
  if (dataset == "MUTAG") {
    shape(3, 64, 8);
  } else if (dataset == "BZR") {
    shape(5, 16, 64);
  } else if (dataset == "COX2") {
    shape(3, 8, 16);
  } else if (dataset == "IMDB-MULTI") {
    shape(3, 8, 8);
  } else if (dataset == "PROTEINS" || dataset == "PTC_MR") {
    shape(5, 8, 8);
  } else if (dataset == "PTC_MM") {
    shape(5, 32, 8);
    c.landmarks = LandmarkStrategy::betweenness;
  } else if (dataset == "PTC_FM" || dataset == "PTC_FR" || dataset == "IMDB-BINARY" || dataset == "REDDIT-BINARY") {
    shape(5, 32, 8);
  } else if (dataset == "synthetic" || dataset == "cycles_vs_cliques") {
    shape(2, 16, 8);
    c.witness_dim = 16;
    c.lr = 0.01;
  } else {
    throw ConfigError("no preset named '" + std::string(dataset) + "'");
  }
  return c;
}

inline std::vector<std::string> preset_names() {
  return {"MUTAG",  "BZR",    "COX2",   "PROTEINS",    "PTC_MR",     "PTC_MM",       "PTC_FM",
          "PTC_FR", "IMDB-BINARY", "IMDB-MULTI", "REDDIT-BINARY", "synthetic"};
}

}  // namespace topopool::model
