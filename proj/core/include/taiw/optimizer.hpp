#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "taiw/model.hpp"

namespace taiw {

// Flat addressing of every trainable in a TaiwModel, in this order:
// kernel raws (item-major), user embeddings, item embeddings, item biases.
class ParameterLayout {
 public:
  explicit ParameterLayout(const TaiwModel& model);

  std::size_t size() const { return bias_offset_ + num_bias_; }

  std::size_t kernel(ItemId item, KernelParam p) const { return item * kNumKernelParams + p; }
  std::size_t user_embedding(UserId u, std::size_t k) const { return user_offset_ + u * dim_ + k; }
  std::size_t item_embedding(ItemId i, std::size_t k) const { return item_offset_ + i * dim_ + k; }
  std::size_t bias(ItemId i) const { return bias_offset_ + i; }

  double& at(TaiwModel& model, std::size_t index) const;
  double at(const TaiwModel& model, std::size_t index) const;

 private:
  std::size_t dim_ = 0;
  std::size_t user_offset_ = 0;
  std::size_t item_offset_ = 0;
  std::size_t bias_offset_ = 0;
  std::size_t num_bias_ = 0;
};

// Dense accumulator that remembers which coordinates were written, so clearing and
// applying cost O(touched) rather than O(size).
class SparseGradient {
 public:
  SparseGradient() = default;
  explicit SparseGradient(std::size_t size) : values_(size, 0.0), marked_(size, 0) {}

  void add(std::size_t index, double value) {
    if (!marked_[index]) {
      marked_[index] = 1;
      touched_.push_back(index);
    }
    values_[index] += value;
  }

  double operator[](std::size_t index) const { return values_[index]; }
  std::size_t size() const { return values_.size(); }
  // Touched coordinates in first-write order.
  std::span<const std::size_t> touched() const { return touched_; }
  void clear();

 private:
  std::vector<double> values_;
  std::vector<char> marked_;
  std::vector<std::size_t> touched_;
};

struct AdamOptions {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam that only visits touched coordinates (moment buffers of untouched coordinates are left
// as they are). Bias correction uses the global step count.
class Adam {
 public:
  Adam() = default;
  Adam(std::size_t size, AdamOptions options);

  void step(TaiwModel& model, const ParameterLayout& layout, const SparseGradient& grad);
  std::int64_t steps() const { return steps_; }

 private:
  AdamOptions options_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::int64_t steps_ = 0;
};

}  // namespace taiw
