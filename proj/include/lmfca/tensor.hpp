// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmfca/errors.hpp"

namespace lmfca {

using Shape = std::vector<std::size_t>;

inline std::size_t numel(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

inline std::string to_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

inline constexpr std::size_t kMaxRank = 4;

/// Dense row-major array of rank <= 4. Feature maps use F x T x C with the
/// channel index fastest; kernels use the layouts documented in ops.hpp.
template <typename S>
class Tensor {
 public:
  using value_type = S;

  Tensor() = default;

  explicit Tensor(Shape shape, S fill = S{0}) : shape_(std::move(shape)) {
    require(shape_.size() <= kMaxRank, "tensor rank exceeds 4: " + to_string(shape_));
    data_.assign(numel(shape_), fill);
  }

  Tensor(Shape shape, std::vector<S> data) : shape_(std::move(shape)), data_(std::move(data)) {
    require(shape_.size() <= kMaxRank, "tensor rank exceeds 4: " + to_string(shape_));
    require(data_.size() == numel(shape_),
            "tensor data length " + std::to_string(data_.size()) + " does not match shape " +
                to_string(shape_));
  }

  static Tensor scalar(S value) { return Tensor(Shape{1}, std::vector<S>{value}); }

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<S> data() { return data_; }
  std::span<const S> data() const { return data_; }
  S* ptr() { return data_.data(); }
  const S* ptr() const { return data_.data(); }

  S& operator[](std::size_t i) { return data_[i]; }
  const S& operator[](std::size_t i) const { return data_[i]; }

  // Rank-3 accessors (F x T x C).
  S& at(std::size_t f, std::size_t t, std::size_t c) {
    return data_[(f * shape_[1] + t) * shape_[2] + c];
  }
  const S& at(std::size_t f, std::size_t t, std::size_t c) const {
    return data_[(f * shape_[1] + t) * shape_[2] + c];
  }

  S item() const {
    require(data_.size() == 1, "item() on tensor of shape " + to_string(shape_));
    return data_[0];
  }

  void fill(S value) { std::fill(data_.begin(), data_.end(), value); }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](S v) { return std::isfinite(v); });
  }

  Tensor& operator+=(const Tensor& other) {
    require(shape_ == other.shape_, "in-place add shape mismatch " + to_string(shape_) + " vs " +
                                        to_string(other.shape_));
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  template <typename U>
  Tensor<U> cast() const {
    std::vector<U> out(data_.begin(), data_.end());
    return Tensor<U>(shape_, std::move(out));
  }

  Tensor reshaped(Shape shape) const& {
    require(numel(shape) == data_.size(), "reshape to incompatible shape " + to_string(shape));
    return Tensor(std::move(shape), data_);
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  Shape shape_;
  std::vector<S> data_;
};

template <typename S>
S max_abs_diff(const Tensor<S>& a, const Tensor<S>& b) {
  require(a.shape() == b.shape(), "max_abs_diff shape mismatch");
  S m{0};
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, static_cast<S>(std::abs(a[i] - b[i])));
  return m;
}

}  // namespace lmfca
