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
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/graph.hpp"
#include "topopool/matrix.hpp"

namespace topopool {

struct DatasetSummary {
  std::size_t graph_count = 0;
  double avg_nodes = 0.0;
  double avg_edges = 0.0;
  std::size_t class_count = 0;

  friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

// A named collection of graphs with class labels in [0, class_count).
// `label_values` maps a class index back to the label written in the source files.
class DatasetBundle {
 public:
  DatasetBundle() = default;
  DatasetBundle(std::string name, std::vector<AttributedGraph> graphs, std::vector<long> label_values)
      : name_(std::move(name)), graphs_(std::move(graphs)), label_values_(std::move(label_values)) {
    for (const auto& g : graphs_) {
      detail::require(g.label() >= 0 && static_cast<std::size_t>(g.label()) < label_values_.size(),
                      "DatasetBundle: graph label outside [0, class_count)");
    }
    summary_ = recompute_summary();
  }

  const std::string& name() const { return name_; }
  std::span<const AttributedGraph> graphs() const { return graphs_; }
  const AttributedGraph& operator[](std::size_t i) const { return graphs_.at(i); }
  std::size_t size() const { return graphs_.size(); }
  bool empty() const { return graphs_.empty(); }
  std::size_t class_count() const { return label_values_.size(); }
  std::span<const long> label_values() const { return label_values_; }
  std::size_t feature_dim() const { return graphs_.empty() ? 0 : graphs_.front().feature_dim(); }
  const DatasetSummary& summary() const { return summary_; }

  DatasetSummary recompute_summary() const {
    DatasetSummary s;
    s.graph_count = graphs_.size();
    s.class_count = label_values_.size();
    if (graphs_.empty()) return s;
    double nodes = 0.0;
    double edges = 0.0;
    for (const auto& g : graphs_) {
      nodes += static_cast<double>(g.node_count());
      edges += static_cast<double>(g.edge_count());
    }
    s.avg_nodes = nodes / static_cast<double>(graphs_.size());
    s.avg_edges = edges / static_cast<double>(graphs_.size());
    return s;
  }

 private:
  std::string name_;
  std::vector<AttributedGraph> graphs_;
  std::vector<long> label_values_;
  DatasetSummary summary_;
};

// One-hot degree features, one column per degree in [0, cap]; larger degrees
// saturate into the last column. Replaces the features of every graph.
inline std::vector<AttributedGraph> with_degree_one_hot(const std::vector<AttributedGraph>& graphs,
                                                        std::optional<std::size_t> cap = std::nullopt) {
  std::size_t max_degree = 0;
  for (const auto& g : graphs)
    for (NodeId u = 0; u < g.node_count(); ++u) max_degree = std::max(max_degree, g.degree(u));
  const std::size_t top = cap.value_or(max_degree);
  std::vector<AttributedGraph> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) {
    Matrix x(g.node_count(), top + 1);
    for (NodeId u = 0; u < g.node_count(); ++u) x(u, std::min(g.degree(u), top)) = 1.0;
    out.push_back(g.with_features(std::move(x)));
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

struct TextLine {
  std::size_t number;  // 1-based
  std::string text;
};

inline std::vector<TextLine> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::vector<TextLine> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto t = trim(line);
    if (t.empty()) continue;
    lines.push_back({number, std::string(t)});
  }
  return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    fields.push_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] inline void parse_failure(const std::filesystem::path& path, std::size_t line,
                                       const std::string& what) {
  throw ParseError(path.filename().string() + ":" + std::to_string(line) + ": " + what);
}

inline long parse_long(std::string_view s, const std::filesystem::path& path, std::size_t line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    parse_failure(path, line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

inline double parse_double(std::string_view s, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    parse_failure(path, line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

// Loads a dataset in the TU benchmark text format from `dir`:
//   <name>_A.txt               1-indexed "i, j" edge pairs (both directions)
//   <name>_graph_indicator.txt graph id of node i on line i
//   <name>_graph_labels.txt    class label of graph g on line g
//   <name>_node_labels.txt     optional, discrete node label per node
//   <name>_node_attributes.txt optional, comma-separated real attributes per node
// Features are the node attributes when present, else one-hot node labels,
// else one-hot degrees. Graph labels are mapped to [0, C) in ascending order.
inline DatasetBundle load_tudataset(const std::filesystem::path& dir, const std::string& name) {
  namespace fs = std::filesystem;
  auto file = [&](const char* suffix) { return dir / (name + suffix); };
  const fs::path a_path = file("_A.txt");
  const fs::path indicator_path = file("_graph_indicator.txt");
  const fs::path labels_path = file("_graph_labels.txt");
  for (const auto& p : {a_path, indicator_path, labels_path}) {
    if (!fs::is_regular_file(p)) throw LoadError("missing dataset file " + p.string());
  }

  // Node -> graph id.
  const auto indicator_lines = detail::read_lines(indicator_path);
  const std::size_t total_nodes = indicator_lines.size();
  std::vector<long> node_graph(total_nodes);
  std::map<long, std::vector<std::size_t>> graph_nodes;
  for (std::size_t i = 0; i < total_nodes; ++i) {
    long gid = detail::parse_long(indicator_lines[i].text, indicator_path, indicator_lines[i].number);
    if (gid < 1) detail::parse_failure(indicator_path, indicator_lines[i].number, "graph id must be >= 1");
    node_graph[i] = gid;
    graph_nodes[gid].push_back(i);
  }

  const auto label_lines = detail::read_lines(labels_path);
  if (!graph_nodes.empty() && static_cast<std::size_t>(graph_nodes.rbegin()->first) > label_lines.size()) {
    throw ParseError(labels_path.filename().string() + ": " + std::to_string(label_lines.size()) +
                     " labels for graph id " + std::to_string(graph_nodes.rbegin()->first));
  }
  std::vector<long> raw_labels;
  raw_labels.reserve(label_lines.size());
  for (const auto& l : label_lines) raw_labels.push_back(detail::parse_long(l.text, labels_path, l.number));

  // Local index of every node within its graph.
  std::vector<std::size_t> local(total_nodes);
  for (const auto& [gid, nodes] : graph_nodes)
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;

  std::map<long, std::vector<Edge>> graph_edges;
  for (const auto& l : detail::read_lines(a_path)) {
    auto fields = detail::split_fields(l.text);
    if (fields.size() != 2) detail::parse_failure(a_path, l.number, "expected 'i, j'");
    long a = detail::parse_long(fields[0], a_path, l.number);
    long b = detail::parse_long(fields[1], a_path, l.number);
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > total_nodes ||
        static_cast<std::size_t>(b) > total_nodes) {
      detail::parse_failure(a_path, l.number,
                            "dangling node index (" + std::to_string(total_nodes) + " nodes declared)");
    }
    std::size_t u = static_cast<std::size_t>(a - 1);
    std::size_t v = static_cast<std::size_t>(b - 1);
    if (node_graph[u] != node_graph[v]) detail::parse_failure(a_path, l.number, "edge joins two graphs");
    if (u == v) continue;
    std::size_t lu = local[u];
    std::size_t lv = local[v];
    if (lu > lv) std::swap(lu, lv);
    graph_edges[node_graph[u]].push_back({lu, lv, 1.0});
  }

  std::optional<Matrix> node_features;
  const fs::path attr_path = file("_node_attributes.txt");
  const fs::path nlabel_path = file("_node_labels.txt");
  if (fs::is_regular_file(attr_path)) {
    const auto lines = detail::read_lines(attr_path);
    if (lines.size() != total_nodes)
      throw ParseError(attr_path.filename().string() + ": expected " + std::to_string(total_nodes) + " rows");
    std::size_t dim = detail::split_fields(lines.front().text).size();
    Matrix x(total_nodes, dim);
    for (std::size_t i = 0; i < total_nodes; ++i) {
      auto fields = detail::split_fields(lines[i].text);
      if (fields.size() != dim) detail::parse_failure(attr_path, lines[i].number, "ragged attribute row");
      for (std::size_t j = 0; j < dim; ++j) x(i, j) = detail::parse_double(fields[j], attr_path, lines[i].number);
    }
    node_features = std::move(x);
  } else if (fs::is_regular_file(nlabel_path)) {
    const auto lines = detail::read_lines(nlabel_path);
    if (lines.size() != total_nodes)
      throw ParseError(nlabel_path.filename().string() + ": expected " + std::to_string(total_nodes) + " rows");
    std::vector<long> values;
    for (const auto& l : lines) values.push_back(detail::parse_long(l.text, nlabel_path, l.number));
    std::vector<long> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Matrix x(total_nodes, distinct.size());
    for (std::size_t i = 0; i < total_nodes; ++i) {
      auto pos = std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin();
      x(i, static_cast<std::size_t>(pos)) = 1.0;
    }
    node_features = std::move(x);
  }

  std::vector<long> distinct_labels;
  for (const auto& [gid, nodes] : graph_nodes) distinct_labels.push_back(raw_labels[gid - 1]);
  std::sort(distinct_labels.begin(), distinct_labels.end());
  distinct_labels.erase(std::unique(distinct_labels.begin(), distinct_labels.end()), distinct_labels.end());

  std::vector<AttributedGraph> graphs;
  graphs.reserve(graph_nodes.size());
  for (auto& [gid, nodes] : graph_nodes) {
    auto& edges = graph_edges[gid];
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                edges.end());
    Matrix x = node_features ? select_rows(*node_features, nodes) : Matrix(nodes.size(), 0);
    int label = static_cast<int>(std::lower_bound(distinct_labels.begin(), distinct_labels.end(),
                                                  raw_labels[gid - 1]) -
                                 distinct_labels.begin());
    graphs.emplace_back(nodes.size(), std::move(edges), std::move(x), label);
  }
  if (!node_features) graphs = with_degree_one_hot(graphs);
  return DatasetBundle(name, std::move(graphs), std::move(distinct_labels));
}

// Writes `bundle` in the TU text format (features as node attributes).
// Only unit-weight graphs can be represented.
inline void write_tudataset(const DatasetBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string& name = bundle.name();
  auto open = [&](const char* suffix) {
    std::ofstream out(dir / (name + suffix));
    if (!out) throw LoadError("cannot write " + (dir / (name + suffix)).string());
    return out;
  };
  auto a_out = open("_A.txt");
  auto ind_out = open("_graph_indicator.txt");
  auto lab_out = open("_graph_labels.txt");
  const bool write_attributes = bundle.feature_dim() > 0;
  std::ofstream attr_out;
  if (write_attributes) attr_out = open("_node_attributes.txt");

  std::size_t offset = 1;
  for (std::size_t gi = 0; gi < bundle.size(); ++gi) {
    const auto& g = bundle[gi];
    detail::require(g.has_unit_weights(), "write_tudataset: weighted edges are not representable");
    for (NodeId u = 0; u < g.node_count(); ++u) {
      ind_out << gi + 1 << '\n';
      if (write_attributes) {
        auto row = g.features().row(u);
        for (std::size_t j = 0; j < row.size(); ++j)
          attr_out << (j ? ", " : "") << detail::format_double(row[j]);
        attr_out << '\n';
      }
    }
    for (const auto& e : g.edges()) {
      a_out << e.u + offset << ", " << e.v + offset << '\n';
      a_out << e.v + offset << ", " << e.u + offset << '\n';
    }
    lab_out << bundle.label_values()[static_cast<std::size_t>(g.label())] << '\n';
    offset += g.node_count();
  }
}

}  // namespace topopool
