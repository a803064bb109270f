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

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "topopool/error.hpp"
#include "topopool/matrix.hpp"

namespace topopool::nn {

inline constexpr int checkpoint_version = 1;

// Named arrays that make up a model's state (parameters and running buffers).
using StateRefs = std::vector<std::pair<std::string, Matrix*>>;

// {"format": "topopool-checkpoint", "version": 1,
//  "arrays": [{"name", "rows", "cols", "data": [row-major values]}]}
// Doubles are written with round-trip precision, so save/load is exact.
inline nlohmann::json checkpoint_to_json(const StateRefs& state) {
  nlohmann::json arrays = nlohmann::json::array();
  for (const auto& [name, m] : state) {
    arrays.push_back({{"name", name},
                      {"rows", m->rows()},
                      {"cols", m->cols()},
                      {"data", std::vector<double>(m->data().begin(), m->data().end())}});
  }
  return {{"format", "topopool-checkpoint"}, {"version", checkpoint_version}, {"arrays", arrays}};
}

inline void checkpoint_from_json(const nlohmann::json& j, const StateRefs& state) {
  if (j.value("format", "") != "topopool-checkpoint" || j.value("version", 0) != checkpoint_version)
    throw ContractViolation("checkpoint: unsupported format or version");
  std::map<std::string, const nlohmann::json*> by_name;
  for (const auto& a : j.at("arrays")) by_name[a.at("name").get<std::string>()] = &a;
  for (const auto& [name, m] : state) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw ContractViolation("checkpoint: missing array '" + name + "'");
    const auto& a = *it->second;
    const auto rows = a.at("rows").get<std::size_t>();
    const auto cols = a.at("cols").get<std::size_t>();
    if (rows != m->rows() || cols != m->cols())
      throw ContractViolation("checkpoint: shape mismatch for '" + name + "'");
    *m = Matrix(rows, cols, a.at("data").get<std::vector<double>>());
  }
}

inline void save_checkpoint(const StateRefs& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(state).dump() << '\n';
}

inline void load_checkpoint(const StateRefs& state, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read checkpoint " + path.string());
  checkpoint_from_json(nlohmann::json::parse(in), state);
}

}  // namespace topopool::nn
