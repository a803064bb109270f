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

// topopool command-line tool: dataset statistics, persistence diagrams,
// training, ablations and timing benchmarks. Every command writes a run
// manifest that `topopool replay` can execute again.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "topopool/topopool.hpp"

namespace {

using namespace topopool;
namespace fs = std::filesystem;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;
constexpr int exit_data = 3;

struct Options {
  std::string data_dir = "data";
  std::string dataset;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string out = ".";
  std::optional<std::string> mode;
  std::optional<double> psi;
  std::string landmarks;
  std::string graph;
  std::size_t bench_epochs = 1;
};

// Git-style object id: SHA-1 over "blob <size>\0" followed by the content.
std::string git_hash(std::string_view kind, std::string_view content) {
  const std::string header = std::string(kind) + " " + std::to_string(content.size()) + '\0';
  std::string payload = header + std::string(content);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(payload.data(), payload.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw Error("SHA-1 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw LoadError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << content;
}

bool is_synthetic(const std::string& name) {
  return name == "synthetic" || name == "cycles_vs_cliques" || name == "molecule_like";
}

DatasetBundle load_dataset(const Options& o) {
  if (o.dataset.empty()) throw ConfigError("--dataset is required");
  if (o.dataset == "synthetic" || o.dataset == "cycles_vs_cliques") return synthetic::cycles_vs_cliques(40, 0);
  if (o.dataset == "molecule_like") return synthetic::molecule_like(188, 0);
  return load_tudataset(fs::path(o.data_dir) / o.dataset, o.dataset);
}

// Inputs are the dataset files (or the generator name) and the config file,
// combined like a git tree: one "<hash> <name>" line per input.
std::string input_hash(const Options& o) {
  std::string tree;
  if (!o.dataset.empty()) {
    if (is_synthetic(o.dataset)) {
      tree += git_hash("blob", "generator " + o.dataset) + " " + o.dataset + "\n";
    } else {
      std::vector<fs::path> files;
      const fs::path dir = fs::path(o.data_dir) / o.dataset;
      if (fs::is_directory(dir))
        for (const auto& e : fs::directory_iterator(dir))
          if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) tree += git_hash("blob", read_file(f)) + " " + f.filename().string() + "\n";
    }
  }
  if (!o.config_path.empty()) tree += git_hash("blob", read_file(o.config_path)) + " config\n";
  return git_hash("tree", tree);
}

std::vector<std::uint64_t> parse_seeds(const std::string& list) {
  std::vector<std::uint64_t> out;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad seed '" + item + "' in --seeds");
    }
  }
  if (out.empty()) throw ConfigError("--seeds is empty");
  return out;
}

const std::string& check_mode(const std::string& mode) {
  if (mode != "vr" && mode != "witness") throw ConfigError("--mode must be 'vr' or 'witness'");
  return mode;
}

struct Resolved {
  model::ModelConfig config;
  std::vector<std::uint64_t> seeds;
};

// Preset for the dataset (when one exists), then the config file, then flags.
Resolved resolve(Options& o) {
  json file = json::object();
  if (!o.config_path.empty()) {
    try {
      file = json::parse(read_file(o.config_path));
    } catch (const json::exception& e) {
      throw ConfigError("config " + o.config_path + " is not valid JSON: " + e.what());
    } catch (const LoadError& e) {
      throw ConfigError(e.what());
    }
    if (!file.is_object()) throw ConfigError("config must be a flat JSON object");
    if (o.dataset.empty() && file.contains("dataset")) o.dataset = file.at("dataset").get<std::string>();
  }
  const auto names = model::preset_names();
  model::ModelConfig base =
      std::find(names.begin(), names.end(), o.dataset) != names.end() ? model::preset(o.dataset) : model::ModelConfig{};
  Resolved r;
  r.config = model::apply_json(base, file, {"dataset", "seeds"});
  r.seeds = {r.config.seed};
  if (file.contains("seeds")) {
    try {
      r.seeds = file.at("seeds").get<std::vector<std::uint64_t>>();
    } catch (const json::exception&) {
      throw ConfigError("config key 'seeds' must be a list of non-negative integers");
    }
  }
  if (!o.seeds.empty()) r.seeds = parse_seeds(o.seeds);
  if (o.seed) r.seeds = {*o.seed};
  if (o.psi) r.config.psi = *o.psi;
  if (!o.landmarks.empty()) {
    try {
      r.config.landmarks = parse_landmark_strategy(o.landmarks);
    } catch (const ContractViolation& e) {
      throw ConfigError(e.what());
    }
  }
  if (o.mode) r.config.vr_global = check_mode(*o.mode) == "vr";
  r.config.seed = r.seeds.front();
  r.config.validate();
  if (r.seeds.empty()) throw ConfigError("seed list is empty");
  return r;
}

struct Manifest {
  std::string command;
  std::vector<std::string> arguments;
  json config = nullptr;
  std::vector<std::uint64_t> seeds;
  std::string inputs;
  std::vector<std::string> outputs;
  double seconds = 0.0;

  void write(const fs::path& out_dir) {
    const fs::path p = out_dir / (command + "_manifest.json");
    outputs.push_back(p.string());
    json j{{"command", command},     {"arguments", arguments}, {"config", config},
           {"seeds", seeds},         {"input_hash", inputs},   {"outputs", outputs},
           {"timings", {{"total_seconds", seconds}}}};
    write_file(p, j.dump(2) + "\n");
  }
};

AttributedGraph select_graph(const Options& o) {
  const std::string& s = o.graph;
  if (s == "node") return synthetic::path(1);
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string kind = s.substr(0, colon);
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ConfigError("bad graph size in selector '" + s + "'");
    }
    if (n == 0) throw ConfigError("graph selector '" + s + "' needs at least one node");
    if (kind == "cycle") return synthetic::cycle(n);
    if (kind == "complete") return synthetic::complete(n);
    if (kind == "path") return synthetic::path(n);
    if (kind == "star") return synthetic::star(n);
    throw ConfigError("unknown graph kind '" + kind + "' (cycle, complete, path, star, node or an index)");
  }
  std::size_t index = 0;
  try {
    std::size_t used = 0;
    index = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw ConfigError("bad graph selector '" + s + "'");
  }
  const auto data = load_dataset(o);
  if (index >= data.size())
    throw ConfigError("graph index " + std::to_string(index) + " out of range (" + std::to_string(data.size()) + " graphs)");
  return data[index];
}

int cmd_stats(Options& o, Manifest& m) {
  const auto data = load_dataset(o);
  const auto& s = data.summary();
  std::ostringstream csv;
  csv << "dataset,graphs,avg_nodes,avg_edges,classes\n"
      << data.name() << ',' << s.graph_count << ',' << detail::format_double(s.avg_nodes) << ','
      << detail::format_double(s.avg_edges) << ',' << s.class_count << '\n';
  std::printf("%-16s %8s %10s %10s %8s\n", "dataset", "graphs", "avg |V|", "avg |E|", "classes");
  std::printf("%-16s %8zu %10.2f %10.2f %8zu\n", data.name().c_str(), s.graph_count, s.avg_nodes, s.avg_edges,
              s.class_count);
  const fs::path p = fs::path(o.out) / "stats.csv";
  write_file(p, csv.str());
  m.outputs.push_back(p.string());
  return exit_ok;
}

int cmd_ph(Options& o, Manifest& m) {
  if (o.graph.empty()) throw ConfigError("--graph is required");
  const std::string mode = check_mode(o.mode.value_or("vr"));
  const AttributedGraph g = select_graph(o);
  const DistanceMatrix d = shortest_paths(g);
  PersistenceDiagram diagram;
  json params{{"graph", o.graph}, {"mode", mode}};
  if (mode == "vr") {
    diagram = reduce_boundary(vr_filtration(d, 2));
  } else {
    LandmarkStrategy strategy = LandmarkStrategy::degree;
    try {
      if (!o.landmarks.empty()) strategy = parse_landmark_strategy(o.landmarks);
    } catch (const ContractViolation& e) {
      throw ConfigError(e.what());
    }
    const double psi = o.psi.value_or(0.3);
    if (!(psi > 0.0 && psi <= 1.0)) throw ConfigError("--psi must lie in (0, 1]");
    const std::uint64_t seed = o.seed.value_or(0);
    const auto landmarks = select_landmarks(g, strategy, psi, seed);
    diagram = reduce_boundary(witness_filtration(d, landmarks, 2));
    params["psi"] = psi;
    params["landmarks"] = to_string(strategy);
    params["landmark_nodes"] = landmarks.nodes;
    m.seeds = {seed};
  }
  m.config = params;
  const std::string csv = to_csv(diagram);
  std::fputs(csv.c_str(), stdout);
  const fs::path p = fs::path(o.out) / "diagram.csv";
  write_file(p, csv);
  m.outputs.push_back(p.string());
  return exit_ok;
}

void record(Manifest& m, const Resolved& r) {
  m.config = model::to_json(r.config);
  m.seeds = r.seeds;
}

int cmd_train(Options& o, Manifest& m) {
  const Resolved r = resolve(o);
  record(m, r);
  const auto data = load_dataset(o);
  const auto report = model::train(data, r.config, r.seeds);
  const fs::path metrics = fs::path(o.out) / "metrics.json";
  const fs::path csv = fs::path(o.out) / "metrics.csv";
  write_file(metrics, report.to_json().dump(2) + "\n");
  write_file(csv, model::TrainReport::csv_header() + "\n" + report.csv_row() + "\n");
  m.outputs = {metrics.string(), csv.string()};
  for (const auto& run : report.runs)
    std::printf("seed %llu: train %.4f test %.4f final loss %.6f\n", static_cast<unsigned long long>(run.seed),
                run.train_accuracy, run.test_accuracy, run.epoch_loss.back());
  std::printf("%s: %.4f +- %.4f over %zu seeds\n", data.name().c_str(), report.mean_accuracy(),
              report.std_accuracy(), report.runs.size());
  return exit_ok;
}

int cmd_ablate(Options& o, Manifest& m) {
  const Resolved r = resolve(o);
  record(m, r);
  const auto data = load_dataset(o);
  const auto rows = model::ablate(data, r.config, r.seeds);
  std::string csv = "variant,mean_accuracy,std_accuracy\n";
  json j = json::array();
  std::printf("%-16s %10s %10s\n", "variant", "mean", "std");
  for (const auto& row : rows) {
    csv += row.name + "," + detail::format_double(row.report.mean_accuracy()) + "," +
           detail::format_double(row.report.std_accuracy()) + "\n";
    j.push_back({{"variant", row.name}, {"report", row.report.to_json()}});
    std::printf("%-16s %10.4f %10.4f\n", row.name.c_str(), row.report.mean_accuracy(), row.report.std_accuracy());
  }
  const fs::path csv_path = fs::path(o.out) / "ablation.csv";
  const fs::path json_path = fs::path(o.out) / "ablation.json";
  write_file(csv_path, csv);
  write_file(json_path, j.dump(2) + "\n");
  m.outputs = {csv_path.string(), json_path.string()};
  return exit_ok;
}

int cmd_bench(Options& o, Manifest& m) {
  const Resolved r = resolve(o);
  record(m, r);
  const auto data = load_dataset(o);
  const auto b = model::bench(data, r.config, r.seeds.front(), o.bench_epochs);
  std::printf("%-8s %18s %18s\n", "complex", "PH s/graph", "epoch s");
  std::printf("%-8s %18.6f %18.4f\n", "witness", b.witness_ph_seconds, b.witness_epoch_seconds);
  std::printf("%-8s %18.6f %18.4f\n", "vr", b.vr_ph_seconds, b.vr_epoch_seconds);
  const fs::path p = fs::path(o.out) / "bench.json";
  write_file(p, b.to_json().dump(2) + "\n");
  m.outputs = {p.string()};
  return exit_ok;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--data-dir", o.data_dir, "Directory holding one folder per TU dataset")->capture_default_str();
  cmd->add_option("--dataset", o.dataset, "Dataset name (TU name, synthetic or molecule_like)");
  cmd->add_option("--config", o.config_path, "Flat JSON config; keys are ModelConfig fields plus dataset and seeds");
  cmd->add_option("--seed", o.seed, "Single seed (overrides --seeds and the config)");
  cmd->add_option("--seeds", o.seeds, "Comma-separated seed list");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--mode", o.mode, "Global complex: vr or witness");
  cmd->add_option("--psi", o.psi, "Landmark fraction in (0, 1]");
  cmd->add_option("--landmarks", o.landmarks, "Landmark strategy: random, degree or betweenness");
}

using Command = int (*)(Options&, Manifest&);

int dispatch(const std::vector<std::string>& args);

int run_command(const std::string& name, Command fn, Options& o, const std::vector<std::string>& args) {
  Manifest m;
  m.command = name;
  m.arguments = args;
  const auto start = std::chrono::steady_clock::now();
  const int code = fn(o, m);
  m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.inputs = input_hash(o);
  m.write(o.out);
  return code;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Witness-complex topological pooling for graph classification"};
  app.require_subcommand(1);
  Options o;
  std::string manifest_path;

  auto* stats = app.add_subcommand("stats", "Dataset summary: graph count, mean nodes and edges, classes");
  auto* ph = app.add_subcommand("ph", "Persistence diagram of one graph as dim,birth,death CSV");
  auto* train = app.add_subcommand("train", "Train and evaluate over a seed list");
  auto* ablate = app.add_subcommand("ablate", "Full model against each single ablation");
  auto* bench = app.add_subcommand("bench", "Witness versus Vietoris-Rips timing");
  auto* replay = app.add_subcommand("replay", "Run the command recorded in a manifest again");
  for (auto* cmd : {stats, ph, train, ablate, bench}) add_common(cmd, o);
  ph->add_option("--graph", o.graph, "index into --dataset, node, or cycle:N, complete:N, path:N, star:N");
  bench->add_option("--bench-epochs", o.bench_epochs, "Training epochs timed per mode")->capture_default_str();
  replay->add_option("manifest", manifest_path, "Manifest written by an earlier run")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  if (replay->parsed()) {
    json j;
    try {
      j = json::parse(read_file(manifest_path));
      return dispatch(j.at("arguments").get<std::vector<std::string>>());
    } catch (const json::exception& e) {
      throw ConfigError("bad manifest " + manifest_path + ": " + e.what());
    }
  }
  const std::pair<CLI::App*, Command> table[] = {
      {stats, cmd_stats}, {ph, cmd_ph}, {train, cmd_train}, {ablate, cmd_ablate}, {bench, cmd_bench}};
  for (const auto& [cmd, fn] : table)
    if (cmd->parsed()) return run_command(cmd->get_name(), fn, o, args);
  return exit_config;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_config;
  } catch (const LoadError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return exit_data;
  } catch (const StratificationError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return exit_data;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_failure;
  }
}
