// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

// Reverse-mode differentiation over a dynamically recorded graph. Every
// differentiable op returns a Var whose node keeps its inputs and a closure
// that scatters the node's gradient into them.

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lmfca/tensor.hpp"

namespace lmfca {

template <typename S>
struct Node {
  Tensor<S> value;
  Tensor<S> grad;  // empty until the node first receives a gradient
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node&)> backward_fn;
  const char* op = "leaf";

  bool is_leaf() const { return !backward_fn; }

  Tensor<S>& ensure_grad() {
    if (grad.shape() != value.shape()) grad = Tensor<S>(value.shape());
    return grad;
  }
};

/// Thread-local switch for graph recording. Inference runs with recording off.
class GradMode {
 public:
  static bool enabled() { return flag(); }
  static void set(bool on) { flag() = on; }

 private:
  static bool& flag() {
    thread_local bool on = true;
    return on;
  }
};

class NoGradGuard {
 public:
  NoGradGuard() : previous_(GradMode::enabled()) { GradMode::set(false); }
  ~NoGradGuard() { GradMode::set(previous_); }
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

template <typename S>
class Var {
 public:
  Var() = default;
  explicit Var(Tensor<S> value, bool requires_grad = false)
      : node_(std::make_shared<Node<S>>()) {
    node_->value = std::move(value);
    node_->requires_grad = requires_grad;
  }
  explicit Var(std::shared_ptr<Node<S>> node) : node_(std::move(node)) {}

  bool defined() const { return static_cast<bool>(node_); }
  const Tensor<S>& value() const { return node_->value; }
  Tensor<S>& mutable_value() { return node_->value; }
  const Shape& shape() const { return node_->value.shape(); }
  bool requires_grad() const { return node_->requires_grad; }

  bool has_grad() const { return node_->grad.shape() == node_->value.shape() && !node_->value.empty(); }
  const Tensor<S>& grad() const { return node_->grad; }
  Tensor<S>& mutable_grad() { return node_->ensure_grad(); }
  void zero_grad() { node_->ensure_grad().fill(S{0}); }
  void clear_grad() { node_->grad = Tensor<S>(); }

  const std::shared_ptr<Node<S>>& node() const { return node_; }

 private:
  std::shared_ptr<Node<S>> node_;
};

/// Wraps an op's output. Records the graph edge only when recording is on and
/// some input needs a gradient. Non-finite outputs are a hard error.
template <typename S>
Var<S> make_result(Tensor<S> value, std::vector<Var<S>> inputs,
                   std::function<void(Node<S>&)> backward_fn, const char* op) {
  if (!value.all_finite()) throw NumericError(std::string("non-finite output from ") + op);
  auto node = std::make_shared<Node<S>>();
  node->value = std::move(value);
  node->op = op;
  bool needs = false;
  if (GradMode::enabled()) {
    for (const auto& in : inputs) needs = needs || (in.defined() && in.requires_grad());
  }
  if (needs) {
    node->requires_grad = true;
    node->inputs.reserve(inputs.size());
    for (const auto& in : inputs) node->inputs.push_back(in.defined() ? in.node() : nullptr);
    node->backward_fn = std::move(backward_fn);
  }
  return Var<S>(std::move(node));
}

/// Gradient buffer of input `i` if that input participates, else nullptr.
template <typename S>
Tensor<S>* input_grad(Node<S>& self, std::size_t i) {
  auto& in = self.inputs[i];
  if (!in || !in->requires_grad) return nullptr;
  return &in->ensure_grad();
}

/// Accumulates d(loss)/d(leaf) into every reachable leaf that requires a
/// gradient. Intermediate gradients are released once propagated.
template <typename S>
void backward(const Var<S>& loss) {
  require(loss.defined(), "backward on undefined value");
  require(loss.value().size() == 1,
          "backward requires a scalar loss, got shape " + to_string(loss.shape()));
  if (!loss.requires_grad()) return;

  std::vector<Node<S>*> order;
  std::unordered_set<Node<S>*> visited;
  std::vector<std::pair<Node<S>*, std::size_t>> stack{{loss.node().get(), 0}};
  visited.insert(loss.node().get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node<S>* child = node->inputs[next++].get();
      if (child && child->requires_grad && visited.insert(child).second) stack.push_back({child, 0});
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  Node<S>* root = loss.node().get();
  root->ensure_grad()[0] += S{1};
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node<S>* node = *it;
    if (node->is_leaf()) continue;
    if (node->grad.shape() == node->value.shape()) node->backward_fn(*node);
    node->grad = Tensor<S>();
  }
  for (Node<S>* node : order) {
    if (node->is_leaf() && node->grad.size() && !node->grad.all_finite()) {
      throw NumericError("non-finite gradient reached a leaf");
    }
  }
}

}  // namespace lmfca
