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
#include <limits>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/features.hpp"
#include "topopool/landmarks.hpp"
#include "topopool/matrix.hpp"
#include "topopool/persistence.hpp"
#include "topopool/vietoris_rips.hpp"

namespace topopool::model {

// Similarity neighborhood of one node: the nodes v with S_uv >= phi (plus u),
// bonded pairwise where S_vw >= phi with dissimilarity 1 - S_vw.
struct PhiSubgraph {
  std::vector<NodeId> nodes;  // ascending global ids
  Matrix dissimilarity;       // local ids; +inf where not bonded

  std::size_t size() const { return nodes.size(); }
  std::size_t bond_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) n += std::isfinite(dissimilarity(i, j)) ? 1 : 0;
    return n;
  }
};

inline PhiSubgraph phi_subgraph(NodeId u, const Matrix& similarity, double phi) {
  detail::require(similarity.rows() == similarity.cols(), "phi_subgraph: similarity must be square");
  detail::require(u < similarity.rows(), "phi_subgraph: node out of range");
  PhiSubgraph out;
  for (NodeId v = 0; v < similarity.rows(); ++v)
    if (v == u || similarity(u, v) >= phi) out.nodes.push_back(v);
  const std::size_t m = out.nodes.size();
  out.dissimilarity = Matrix(m, m, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < m; ++i) {
    out.dissimilarity(i, i) = 0.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      // Read one triangle so the local matrix is exactly symmetric.
      const double s = similarity(out.nodes[i], out.nodes[j]);
      if (s >= phi) out.dissimilarity(i, j) = out.dissimilarity(j, i) = std::max(0.0, 1.0 - s);
    }
  }
  return out;
}

// Persistence of the Vietoris-Rips filtration on u's phi-neighborhood.
struct NodeTopology {
  Filtration filtration;
  PersistenceDiagram diagram;
};

inline NodeTopology node_topology(NodeId u, const Matrix& similarity, double phi) {
  const PhiSubgraph sub = phi_subgraph(u, similarity, phi);
  std::vector<NodeId> local(sub.size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = i;
  Filtration f = vr_filtration(local, sub.dissimilarity, 2);
  PersistenceDiagram d = reduce_boundary(f);
  return {std::move(f), std::move(d)};
}

// Score of every node; essential bars are capped per node at the largest
// value of that node's own filtration (1 when it never leaves 0).
inline std::vector<double> topological_scores(const Matrix& similarity, double phi, ScoreConfig score) {
  std::vector<double> out(similarity.rows());
  for (NodeId u = 0; u < similarity.rows(); ++u) {
    const PhiSubgraph sub = phi_subgraph(u, similarity, phi);
    const double top = vr_max_value(sub.dissimilarity);
    score.essential_cap = top > 0.0 ? top : 1.0;
    out[u] = topological_score(vr_persistence(sub.dissimilarity), score);
  }
  return out;
}

struct TopoPoolResult {
  std::vector<double> scores;
  std::vector<NodeId> idx;  // descending score, ties by ascending id
  Matrix a_pool;            // A[idx, idx]
  Matrix x_pool;            // X[idx, :]
};

// Keeps the ceil(ratio N) nodes with the largest scores.
inline std::vector<NodeId> select_top(const std::vector<double>& scores, double ratio) {
  detail::require(ratio > 0.0 && ratio <= 1.0, "select_top: ratio must lie in (0, 1]");
  return top_k_by_score(scores, fraction_count(scores.size(), ratio));
}

inline TopoPoolResult topo_pool(const Matrix& adjacency, const Matrix& similarity, const Matrix& x, double phi,
                                const ScoreConfig& score, double ratio) {
  detail::require(adjacency.rows() == similarity.rows() && adjacency.rows() == x.rows(),
                  "topo_pool: adjacency, similarity and features disagree on N");
  TopoPoolResult r;
  r.scores = topological_scores(similarity, phi, score);
  r.idx = select_top(r.scores, ratio);
  r.a_pool = select_submatrix(adjacency, r.idx);
  r.x_pool = select_rows(x, r.idx);
  return r;
}

}  // namespace topopool::model
