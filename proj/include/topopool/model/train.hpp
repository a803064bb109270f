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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "topopool/error.hpp"
#include "topopool/model/config.hpp"
#include "topopool/model/model.hpp"
#include "topopool/nn/adam.hpp"
#include "topopool/nn/ops.hpp"
#include "topopool/tudataset.hpp"

namespace topopool::model {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per class, round(test_fraction * n_c) shuffled members go to the test side.
inline Split stratified_split(const std::vector<int>& labels, std::uint64_t seed, double test_fraction = 0.1) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  Split s;
  std::size_t train_classes = 0;
  for (auto& [label, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(members.size())));
    s.test.insert(s.test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.insert(s.train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    if (n_test < members.size()) ++train_classes;
  }
  if (train_classes < 2) throw StratificationError("training split holds fewer than two classes");
  if (s.test.empty()) throw StratificationError("test split is empty");
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<double> epoch_loss;  // entry 0 is the untrained model
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<double> epoch_seconds;
};

struct TrainReport {
  std::string dataset;
  ModelConfig config;
  std::vector<SeedRun> runs;

  double mean_accuracy() const {
    double s = 0.0;
    for (const auto& r : runs) s += r.test_accuracy;
    return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
  }

  // Population standard deviation over seeds.
  double std_accuracy() const {
    if (runs.empty()) return 0.0;
    const double m = mean_accuracy();
    double s = 0.0;
    for (const auto& r : runs) s += (r.test_accuracy - m) * (r.test_accuracy - m);
    return std::sqrt(s / static_cast<double>(runs.size()));
  }

  double mean_epoch_seconds() const {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& r : runs)
      for (double e : r.epoch_seconds) {
        s += e;
        ++n;
      }
    return n == 0 ? 0.0 : s / static_cast<double>(n);
  }

  // Timings are left out so the record is reproducible bit for bit.
  nlohmann::json to_json() const {
    nlohmann::json runs_json = nlohmann::json::array();
    for (const auto& r : runs) {
      runs_json.push_back({{"seed", r.seed},
                           {"epoch_loss", r.epoch_loss},
                           {"train_accuracy", r.train_accuracy},
                           {"test_accuracy", r.test_accuracy},
                           {"train_size", r.train_size},
                           {"test_size", r.test_size}});
    }
    return {{"dataset", dataset},
            {"config", model::to_json(config)},
            {"runs", runs_json},
            {"mean_accuracy", mean_accuracy()},
            {"std_accuracy", std_accuracy()}};
  }

  static std::string csv_header() { return "dataset,seeds,mean_accuracy,std_accuracy"; }

  std::string csv_row() const {
    std::ostringstream out;
    out << dataset << ',' << runs.size() << ',' << detail::format_double(mean_accuracy()) << ','
        << detail::format_double(std_accuracy());
    return out.str();
  }
};

inline std::vector<GraphContext> make_contexts(const DatasetBundle& data, const ModelConfig& cfg) {
  std::vector<GraphContext> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out.push_back(make_context(data[i], cfg, i));
  return out;
}

inline double accuracy(WitTopoPool& model, const std::vector<GraphContext>& contexts,
                       const std::vector<std::size_t>& subset) {
  if (subset.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i : subset)
    hits += model.predict(contexts[i]) == static_cast<std::size_t>(contexts[i].label) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(subset.size());
}

inline double mean_loss(WitTopoPool& model, const std::vector<GraphContext>& contexts,
                        const std::vector<std::size_t>& subset) {
  double total = 0.0;
  for (std::size_t i : subset) {
    nn::Tape t;
    total += nn::softmax_cross_entropy(model.forward(t, contexts[i], false), contexts[i].label).value()(0, 0);
  }
  return subset.empty() ? 0.0 : total / static_cast<double>(subset.size());
}

// One seeded 90/10 run: the seed drives the split, the initialization,
// dropout, random landmarks and the per-epoch shuffling.
inline SeedRun train_run(const DatasetBundle& data, const std::vector<GraphContext>& contexts, ModelConfig cfg,
                         std::uint64_t seed) {
  detail::require(!data.empty(), "train: dataset is empty");
  detail::require(data.class_count() >= 2, "train: need at least two classes");
  cfg.seed = seed;
  std::vector<int> labels;
  for (const auto& c : contexts) labels.push_back(c.label);
  const Split split = stratified_split(labels, seed);

  WitTopoPool model(cfg, data.feature_dim(), data.class_count());
  nn::Adam adam(model.parameters(), {cfg.lr});
  std::mt19937_64 order_rng(seed + 1);

  SeedRun run;
  run.seed = seed;
  run.train_size = split.train.size();
  run.test_size = split.test.size();
  run.epoch_loss.push_back(mean_loss(model, contexts, split.train));

  std::vector<std::size_t> order = split.train;
  const double inv_batch = 1.0 / static_cast<double>(cfg.batch_size);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), order_rng);
    double total = 0.0;
    for (std::size_t b = 0; b < order.size(); b += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), b + cfg.batch_size);
      adam.zero_grad();
      for (std::size_t i = b; i < end; ++i) {
        nn::Tape t;
        nn::Var loss = nn::softmax_cross_entropy(model.forward(t, contexts[order[i]], true), contexts[order[i]].label);
        total += loss.value()(0, 0);
        t.backward(nn::scale(loss, inv_batch));
      }
      adam.step();
      model.commit_batch();
    }
    run.epoch_loss.push_back(total / static_cast<double>(order.size()));
    run.epoch_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  run.train_accuracy = accuracy(model, contexts, split.train);
  run.test_accuracy = accuracy(model, contexts, split.test);
  return run;
}

inline TrainReport train(const DatasetBundle& data, const ModelConfig& cfg, const std::vector<std::uint64_t>& seeds) {
  cfg.validate();
  detail::require(!seeds.empty(), "train: seed list is empty");
  TrainReport report{data.name(), cfg, {}};
  const auto contexts = make_contexts(data, cfg);
  for (std::uint64_t s : seeds) report.runs.push_back(train_run(data, contexts, cfg, s));
  return report;
}

struct AblationRow {
  std::string name;
  TrainReport report;
};

// Full model first, then one row per single ablation flag.
inline std::vector<std::pair<std::string, ModelConfig>> ablation_variants(const ModelConfig& base) {
  ModelConfig full = base;
  full.no_tpgcl = full.no_wit_tl = full.no_attention = false;
  ModelConfig no_tpgcl = full;
  no_tpgcl.no_tpgcl = true;
  ModelConfig no_wit = full;
  no_wit.no_wit_tl = true;
  ModelConfig no_att = full;
  no_att.no_attention = true;
  return {{"Wit-TopoPool", full}, {"W/o TPGCL", no_tpgcl}, {"W/o Wit-TL", no_wit}, {"W/o attention", no_att}};
}

inline std::vector<AblationRow> ablate(const DatasetBundle& data, const ModelConfig& base,
                                       const std::vector<std::uint64_t>& seeds) {
  std::vector<AblationRow> rows;
  for (auto& [name, cfg] : ablation_variants(base)) rows.push_back({name, train(data, cfg, seeds)});
  return rows;
}

struct BenchReport {
  std::size_t graphs = 0;
  double witness_ph_seconds = 0.0;  // average per graph
  double vr_ph_seconds = 0.0;
  double witness_epoch_seconds = 0.0;
  double vr_epoch_seconds = 0.0;

  nlohmann::json to_json() const {
    return {{"graphs", graphs},
            {"witness_ph_seconds", witness_ph_seconds},
            {"vr_ph_seconds", vr_ph_seconds},
            {"witness_epoch_seconds", witness_epoch_seconds},
            {"vr_epoch_seconds", vr_epoch_seconds}};
  }
};

// Global-branch persistence time on the untrained embeddings, both complexes,
// then wall time of training epochs in each mode.
inline BenchReport bench(const DatasetBundle& data, const ModelConfig& cfg, std::uint64_t seed,
                         std::size_t epochs = 1) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  BenchReport r;
  r.graphs = data.size();
  ModelConfig witness_cfg = cfg;
  witness_cfg.vr_global = false;
  witness_cfg.seed = seed;
  ModelConfig vr_cfg = witness_cfg;
  vr_cfg.vr_global = true;

  const auto contexts = make_contexts(data, cfg);
  WitTopoPool model(witness_cfg, data.feature_dim(), data.class_count());
  for (const auto& ctx : contexts) {
    nn::Tape t;
    const Matrix h = model.embed(t, ctx).value();
    auto t0 = clock::now();
    (void)global_topology(h, witness_cfg, seed + ctx.id);
    auto t1 = clock::now();
    (void)global_topology(h, vr_cfg, seed + ctx.id);
    auto t2 = clock::now();
    r.witness_ph_seconds += std::chrono::duration<double>(t1 - t0).count();
    r.vr_ph_seconds += std::chrono::duration<double>(t2 - t1).count();
  }
  if (!contexts.empty()) {
    r.witness_ph_seconds /= static_cast<double>(contexts.size());
    r.vr_ph_seconds /= static_cast<double>(contexts.size());
  }
  if (epochs > 0) {
    witness_cfg.epochs = vr_cfg.epochs = epochs;
    TrainReport w{data.name(), witness_cfg, {train_run(data, contexts, witness_cfg, seed)}};
    TrainReport v{data.name(), vr_cfg, {train_run(data, contexts, vr_cfg, seed)}};
    r.witness_epoch_seconds = w.mean_epoch_seconds();
    r.vr_epoch_seconds = v.mean_epoch_seconds();
  }
  return r;
}

}  // namespace topopool::model
