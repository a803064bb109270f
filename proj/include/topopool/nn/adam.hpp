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

#include <cmath>
#include <cstddef>
#include <vector>

#include "topopool/error.hpp"
#include "topopool/matrix.hpp"
#include "topopool/nn/tape.hpp"

namespace topopool::nn {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias-corrected moments. Reads Parameter::grad, updates
// Parameter::value; gradients are left for the caller to zero.
class Adam {
 public:
  Adam(std::vector<Parameter*> params, AdamOptions options = {}) : params_(std::move(params)), options_(options) {
    detail::require(options_.lr > 0.0, "Adam: learning rate must be positive");
    for (auto* p : params_) {
      first_.emplace_back(p->value.rows(), p->value.cols());
      second_.emplace_back(p->value.rows(), p->value.cols());
    }
  }

  void step() {
    ++steps_;
    const double t = static_cast<double>(steps_);
    const double c1 = 1.0 - std::pow(options_.beta1, t);
    const double c2 = 1.0 - std::pow(options_.beta2, t);
    for (std::size_t i = 0; i < params_.size(); ++i) {
      auto value = params_[i]->value.data();
      auto grad = params_[i]->grad.data();
      auto m = first_[i].data();
      auto v = second_[i].data();
      for (std::size_t k = 0; k < value.size(); ++k) {
        m[k] = options_.beta1 * m[k] + (1.0 - options_.beta1) * grad[k];
        v[k] = options_.beta2 * v[k] + (1.0 - options_.beta2) * grad[k] * grad[k];
        value[k] -= options_.lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + options_.eps);
      }
    }
  }

  void zero_grad() {
    for (auto* p : params_) p->zero_grad();
  }

  std::size_t step_count() const { return steps_; }
  const AdamOptions& options() const { return options_; }

 private:
  std::vector<Parameter*> params_;
  AdamOptions options_;
  std::vector<Matrix> first_;
  std::vector<Matrix> second_;
  std::size_t steps_ = 0;
};

}  // namespace topopool::nn
