#include "taiw/base_intensity.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace taiw {

BaseIntensityModel::BaseIntensityModel(std::size_t num_users, std::size_t num_items, std::size_t dim)
    : num_users_(num_users),
      num_items_(num_items),
      dim_(dim),
      user_emb_(num_users * dim, 0.0),
      item_emb_(num_items * dim, 0.0),
      bias_(num_items, 0.0) {}

BaseIntensityModel BaseIntensityModel::random(std::size_t num_users, std::size_t num_items,
                                              std::size_t dim, std::uint64_t seed, double stddev) {
  BaseIntensityModel m(num_users, num_items, dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, stddev);
  for (double& v : m.user_emb_) v = normal(rng);
  for (double& v : m.item_emb_) v = normal(rng);
  return m;
}

double base_intensity(UserId u, ItemId i, const BaseIntensityModel& m) {
  if (u >= m.num_users() || i >= m.num_items()) {
    throw std::out_of_range("base_intensity: id out of range (user " + std::to_string(u) +
                            ", item " + std::to_string(i) + ")");
  }
  const auto a = m.user_row(u);
  const auto b = m.item_row(i);
  double dot = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
  }
  return dot + m.bias(i);
}

double l2_penalty(const BaseIntensityModel& m, double weight, BaseIntensityModel* gradient) {
  if (weight < 0.0) {
    throw std::invalid_argument("l2 weight must be non-negative");
  }
  if (gradient) {
    *gradient = m;
  }
  double sum = 0.0;
  auto accumulate = [&](std::span<const double> src, std::span<double> grad) {
    for (std::size_t k = 0; k < src.size(); ++k) {
      sum += src[k] * src[k];
      if (!grad.empty()) grad[k] = 2.0 * weight * src[k];
    }
  };
  accumulate(m.user_embeddings(), gradient ? gradient->user_embeddings() : std::span<double>{});
  accumulate(m.item_embeddings(), gradient ? gradient->item_embeddings() : std::span<double>{});
  accumulate(m.item_bias(), gradient ? gradient->item_bias() : std::span<double>{});
  return weight * sum;
}

}  // namespace taiw
