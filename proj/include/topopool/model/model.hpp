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
#include <vector>

#include "topopool/features.hpp"
#include "topopool/graph.hpp"
#include "topopool/landmarks.hpp"
#include "topopool/model/config.hpp"
#include "topopool/model/pooling.hpp"
#include "topopool/nn/checkpoint.hpp"
#include "topopool/nn/layers.hpp"
#include "topopool/nn/ops.hpp"
#include "topopool/nn/tape.hpp"
#include "topopool/persistence.hpp"
#include "topopool/vietoris_rips.hpp"
#include "topopool/witness.hpp"

namespace topopool::model {

// Per-graph quantities that do not depend on the weights.
struct GraphContext {
  std::size_t id = 0;
  Matrix adjacency;
  Matrix propagation;  // P^k
  Matrix features;
  int label = 0;
};

inline GraphContext make_context(const AttributedGraph& g, const ModelConfig& cfg, std::size_t id) {
  Matrix a = g.adjacency_matrix();
  Matrix p = nn::propagation_power(a, cfg.power_k, cfg.normalization());
  return {id, std::move(a), std::move(p), g.features(), g.label()};
}

// Global witness-branch topology of one embedding.
struct GlobalTopology {
  Matrix similarity;
  AttributedGraph similarity_graph;  // edge length max(1 - S, 1e-9)
  LandmarkSet landmarks;
  Filtration filtration;
  PersistenceDiagram diagram;
  double alpha_max = 1.0;
  PersistenceImage image;
};

inline constexpr double min_edge_length = 1e-9;

// Similarity graph: u ~ v when S_uv >= zeta (or <= zeta under the literal flag).
inline AttributedGraph similarity_graph(const Matrix& similarity, double zeta, bool literal) {
  const std::size_t n = similarity.rows();
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const double s = similarity(u, v);
      if (literal ? s <= zeta : s >= zeta) edges.push_back({u, v, std::max(1.0 - s, min_edge_length)});
    }
  return AttributedGraph(n, std::move(edges), Matrix(n, 1, 1.0));
}

// Same edges with unit weights; centrality-based landmarks rank this one.
inline AttributedGraph structure_of(const AttributedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.weight = 1.0;
  return AttributedGraph(g.node_count(), std::move(edges), g.features(), g.label());
}

inline GlobalTopology global_topology(const Matrix& embedding, const ModelConfig& cfg, std::uint64_t seed) {
  GlobalTopology t;
  t.similarity = nn::similarity_matrix(embedding, cfg.similarity, cfg.gamma);
  t.similarity_graph = similarity_graph(t.similarity, cfg.zeta, cfg.zeta_literal);
  const DistanceMatrix d = shortest_paths(t.similarity_graph);
  if (cfg.vr_global) {
    t.landmarks = {cfg.landmarks, 1.0, {}};
    for (NodeId v = 0; v < embedding.rows(); ++v) t.landmarks.nodes.push_back(v);
    t.filtration = vr_filtration(d, 2);
  } else {
    t.landmarks = select_landmarks(structure_of(t.similarity_graph), cfg.landmarks, cfg.psi, seed);
    t.filtration = witness_filtration(d, t.landmarks, 2);
  }
  t.diagram = reduce_boundary(t.filtration);
  t.alpha_max = essential_cap_for(t.filtration);
  t.image = persistence_image(t.diagram, cfg.image_resolution, cfg.image_bandwidth_scale * t.alpha_max, t.alpha_max);
  return t;
}

struct ForwardTrace {
  Matrix embedding;  // final GNN layer
  std::vector<double> scores;
  std::vector<NodeId> idx;
  Matrix pooled;  // 1 x d_pool
  std::size_t similarity_edges = 0;
  std::vector<NodeId> landmarks;
  std::size_t diagram_h0 = 0;
  std::size_t diagram_h1 = 0;
  Matrix witness;  // 1 x d_w
  Matrix logits;
};

class WitTopoPool {
 public:
  WitTopoPool(const ModelConfig& cfg, std::size_t feature_dim, std::size_t class_count)
      : cfg_(cfg), dropout_rng_(cfg.seed ^ 0x9e3779b97f4a7c15ULL) {
    cfg_.validate();
    detail::require(feature_dim >= 1, "WitTopoPool: feature dimension must be positive");
    detail::require(class_count >= 2, "WitTopoPool: need at least two classes");
    std::mt19937_64 rng(cfg.seed);
    std::size_t in = feature_dim;
    for (std::size_t l = 0; l < cfg.gnn_layers; ++l) {
      gnn_.emplace_back("gnn." + std::to_string(l), nn::glorot_uniform(in, cfg.hidden_dim, rng));
      in = cfg.hidden_dim;
    }
    std::size_t head_in = 0;
    if (!cfg.no_tpgcl) {
      const std::size_t pool_in = cfg.pool_input == PoolInput::embedding ? cfg.hidden_dim : feature_dim;
      w_pool_ = nn::Parameter("tpgcl.w_pool", nn::glorot_uniform(pool_in, cfg.pool_dim, rng));
      w_attention_ = nn::Parameter("tpgcl.w_attention", nn::glorot_uniform(cfg.pool_dim, 1, rng));
      head_in += cfg.pool_dim;
    }
    if (!cfg.no_wit_tl) {
      const std::size_t pixels = cfg.image_resolution * cfg.image_resolution;
      witness_mlp_ = nn::Mlp("witness", pixels, cfg.witness_dim, cfg.witness_dim, cfg.dropout, rng);
      head_in += cfg.witness_dim;
    }
    head_ = nn::Mlp("head", head_in, cfg.hidden_dim, class_count, cfg.dropout, rng);
  }

  WitTopoPool(const WitTopoPool&) = delete;
  WitTopoPool& operator=(const WitTopoPool&) = delete;

  const ModelConfig& config() const { return cfg_; }

  nn::Var embed(nn::Tape& t, const GraphContext& ctx) {
    nn::Var h = t.constant(ctx.features);
    for (auto& w : gnn_) h = nn::gcn_layer(ctx.propagation, h, t.parameter(w));
    return h;
  }

  // Pooled-branch readout: 1 x d_pool.
  nn::Var tpgcl(nn::Tape& t, const GraphContext& ctx, nn::Var embedding, ForwardTrace* trace) {
    const Matrix sim = nn::similarity_matrix(embedding.value(), cfg_.similarity, cfg_.gamma);
    const std::vector<double> scores = topological_scores(sim, cfg_.phi, cfg_.score_config());
    std::vector<NodeId> idx = select_top(scores, cfg_.pool_ratio);
    const Matrix p_pool = nn::normalized_adjacency(select_submatrix(ctx.adjacency, idx), cfg_.normalization());
    nn::Var x = cfg_.pool_input == PoolInput::embedding ? embedding : t.constant(ctx.features);
    nn::Var h_r = nn::gcn_layer(p_pool, nn::select_rows(x, idx), t.parameter(w_pool_));
    nn::Var out = cfg_.no_attention ? nn::mean_rows(h_r) : nn::second_order_attention(h_r, t.parameter(w_attention_));
    if (trace != nullptr) {
      trace->scores = scores;
      trace->idx = std::move(idx);
      trace->pooled = out.value();
    }
    return out;
  }

  // Witness-branch readout: 1 x d_w.
  nn::Var wit_tl(nn::Tape& t, const GraphContext& ctx, const Matrix& embedding, bool train, ForwardTrace* trace) {
    const GlobalTopology g = global_topology(embedding, cfg_, landmark_seed(ctx.id));
    nn::Var out = witness_mlp_.forward(t, t.constant(g.image.flattened()), train, dropout_rng_);
    if (trace != nullptr) {
      trace->similarity_edges = g.similarity_graph.edge_count();
      trace->landmarks = g.landmarks.nodes;
      trace->diagram_h0 = g.diagram.points(0).size();
      trace->diagram_h1 = g.diagram.points(1).size();
      trace->witness = out.value();
    }
    return out;
  }

  // Logits, 1 x classes.
  nn::Var forward(nn::Tape& t, const GraphContext& ctx, bool train, ForwardTrace* trace = nullptr) {
    nn::Var h = embed(t, ctx);
    if (trace != nullptr) trace->embedding = h.value();
    nn::Var joined;
    if (!cfg_.no_tpgcl) joined = tpgcl(t, ctx, h, trace);
    if (!cfg_.no_wit_tl) {
      nn::Var w = wit_tl(t, ctx, h.value(), train, trace);
      joined = joined.valid() ? nn::concat_cols(joined, w) : w;
    }
    nn::Var logits = head_.forward(t, joined, train, dropout_rng_);
    if (trace != nullptr) trace->logits = logits.value();
    return logits;
  }

  std::size_t predict(const GraphContext& ctx) {
    nn::Tape t;
    const Matrix logits = forward(t, ctx, false).value();
    std::size_t best = 0;
    for (std::size_t c = 1; c < logits.cols(); ++c)
      if (logits(0, c) > logits(0, best)) best = c;
    return best;
  }

  std::vector<nn::Parameter*> parameters() {
    std::vector<nn::Parameter*> out;
    for (auto& w : gnn_) out.push_back(&w);
    if (!cfg_.no_tpgcl) {
      out.push_back(&w_pool_);
      if (!cfg_.no_attention) out.push_back(&w_attention_);
    }
    if (!cfg_.no_wit_tl)
      for (auto* p : witness_mlp_.parameters()) out.push_back(p);
    for (auto* p : head_.parameters()) out.push_back(p);
    return out;
  }

  // Parameters plus batch-norm running statistics.
  nn::StateRefs state() {
    nn::StateRefs out;
    for (auto* p : parameters()) out.emplace_back(p->name, &p->value);
    auto add_norm = [&](nn::BatchNorm& bn, const std::string& name) {
      out.emplace_back(name + ".running_mean", &bn.running_mean);
      out.emplace_back(name + ".running_var", &bn.running_var);
    };
    if (!cfg_.no_wit_tl) add_norm(witness_mlp_.norm, "witness.bn");
    add_norm(head_.norm, "head.bn");
    return out;
  }

  void commit_batch() {
    if (!cfg_.no_wit_tl) witness_mlp_.norm.commit_batch();
    head_.norm.commit_batch();
  }

 private:
  std::uint64_t landmark_seed(std::size_t graph_id) const {
    return cfg_.seed * 0x100000001b3ULL + static_cast<std::uint64_t>(graph_id);
  }

  ModelConfig cfg_;
  std::mt19937_64 dropout_rng_;
  std::vector<nn::Parameter> gnn_;
  nn::Parameter w_pool_;
  nn::Parameter w_attention_;
  nn::Mlp witness_mlp_;
  nn::Mlp head_;
};

}  // namespace topopool::model
