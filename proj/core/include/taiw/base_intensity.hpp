#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "taiw/data.hpp"

namespace taiw {

// Latent-factor user/item affinity: <user_u, item_i> + bias_i.
class BaseIntensityModel {
 public:
  BaseIntensityModel() = default;
  // All parameters zero.
  BaseIntensityModel(std::size_t num_users, std::size_t num_items, std::size_t dim);

  // Zero-mean Gaussian entries with the given standard deviation; biases start at zero.
  static BaseIntensityModel random(std::size_t num_users, std::size_t num_items, std::size_t dim,
                                   std::uint64_t seed, double stddev = 0.01);

  std::size_t num_users() const { return num_users_; }
  std::size_t num_items() const { return num_items_; }
  std::size_t dim() const { return dim_; }

  std::span<double> user_row(UserId u) { return {user_emb_.data() + u * dim_, dim_}; }
  std::span<const double> user_row(UserId u) const { return {user_emb_.data() + u * dim_, dim_}; }
  std::span<double> item_row(ItemId i) { return {item_emb_.data() + i * dim_, dim_}; }
  std::span<const double> item_row(ItemId i) const { return {item_emb_.data() + i * dim_, dim_}; }
  double& bias(ItemId i) { return bias_[i]; }
  double bias(ItemId i) const { return bias_[i]; }

  std::span<double> user_embeddings() { return user_emb_; }
  std::span<const double> user_embeddings() const { return user_emb_; }
  std::span<double> item_embeddings() { return item_emb_; }
  std::span<const double> item_embeddings() const { return item_emb_; }
  std::span<double> item_bias() { return bias_; }
  std::span<const double> item_bias() const { return bias_; }

  friend bool operator==(const BaseIntensityModel&, const BaseIntensityModel&) = default;

 private:
  std::size_t num_users_ = 0;
  std::size_t num_items_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> user_emb_;
  std::vector<double> item_emb_;
  std::vector<double> bias_;
};

// Throws std::out_of_range for unknown ids.
double base_intensity(UserId u, ItemId i, const BaseIntensityModel& m);

// weight * (|U|^2 + |I|^2 + |bias|^2). When `gradient` is given it is overwritten with
// 2 * weight * parameter, shaped like `m`.
double l2_penalty(const BaseIntensityModel& m, double weight, BaseIntensityModel* gradient = nullptr);

}  // namespace taiw
