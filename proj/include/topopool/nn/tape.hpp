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

#include <cstddef>
#include <deque>
#include <functional>
#include <string>
#include <utility>

#include "topopool/error.hpp"
#include "topopool/matrix.hpp"

namespace topopool::nn {

// Named trainable matrix with a gradient accumulator of the same shape.
struct Parameter {
  Parameter() = default;
  Parameter(std::string param_name, Matrix initial)
      : name(std::move(param_name)), value(std::move(initial)), grad(value.rows(), value.cols()) {}

  void zero_grad() { grad.fill(0.0); }

  std::string name;
  Matrix value;
  Matrix grad;
};

class Tape;

// Handle to a value recorded on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  const Matrix& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Reverse-mode tape. Every recorded node keeps its forward value and a
// closure that pushes its gradient into its inputs. Nodes live in a deque so
// references returned by value() stay valid while recording continues.
// A tape is single-threaded and meant to be discarded after one backward pass.
class Tape {
 public:
  // backward(tape, self): read tape.grad(self), accumulate into the inputs.
  using Backward = std::function<void(Tape&, std::size_t)>;

  Var constant(Matrix value) {
    nodes_.push_back(Node{std::move(value), {}, {}, nullptr, false});
    return {this, nodes_.size() - 1};
  }

  Var parameter(Parameter& p) {
    nodes_.push_back(Node{p.value, {}, {}, &p, true});
    return {this, nodes_.size() - 1};
  }

  Var record(Matrix value, std::initializer_list<Var> inputs, Backward backward) {
    bool needs = false;
    for (const auto& in : inputs) {
      detail::require(in.valid() && &in.tape() == this, "Tape: input recorded on another tape");
      needs = needs || nodes_[in.id()].needs_grad;
    }
    nodes_.push_back(Node{std::move(value), {}, needs ? std::move(backward) : Backward{}, nullptr, needs});
    return {this, nodes_.size() - 1};
  }

  const Matrix& value(std::size_t id) const { return nodes_[id].value; }
  bool needs_grad(std::size_t id) const { return nodes_[id].needs_grad; }

  // Gradient buffer of node `id`, allocated as zeros on first use.
  Matrix& grad(std::size_t id) {
    auto& n = nodes_[id];
    if (n.grad.empty() && !n.value.empty()) n.grad = Matrix(n.value.rows(), n.value.cols());
    return n.grad;
  }

  std::size_t size() const { return nodes_.size(); }

  // Seeds d(root)/d(root) = 1 for a 1x1 root, runs every closure in reverse
  // recording order, and adds leaf gradients into their Parameters.
  void backward(const Var& root) {
    detail::require(&root.tape() == this, "Tape::backward: root from another tape");
    detail::require(root.rows() == 1 && root.cols() == 1, "Tape::backward: root must be a scalar");
    if (!nodes_[root.id()].needs_grad) return;
    grad(root.id())(0, 0) += 1.0;
    for (std::size_t i = root.id() + 1; i-- > 0;) {
      auto& n = nodes_[i];
      if (!n.needs_grad || n.grad.empty()) continue;
      if (n.backward) n.backward(*this, i);
      if (n.param != nullptr) n.param->grad += n.grad;
    }
  }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    Backward backward;
    Parameter* param = nullptr;
    bool needs_grad = false;
  };
  std::deque<Node> nodes_;
};

inline const Matrix& Var::value() const { return tape_->value(id_); }

}  // namespace topopool::nn
