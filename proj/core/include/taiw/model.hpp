#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "taiw/base_intensity.hpp"
#include "taiw/config.hpp"
#include "taiw/data.hpp"
#include "taiw/kernel.hpp"
#include "taiw/user_vector.hpp"

namespace taiw {

enum class Variant {
  kTransductive,  // TAIW: base intensity + alpha_i * kernel sum
  kInductive,     // TAIWI: kernel sum only, no user embeddings
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

struct TrainerOptions {
  double learning_rate = 0.01;
  std::size_t batch_size = 256;
  int epochs = 100;
  int patience = 5;
  double l2_weight = 1e-4;
  std::size_t dim = 32;
  double init_stddev = 0.01;
  // Keeps kernel parameters (shape and excitation) fixed during training.
  bool freeze_kernel = false;

  friend bool operator==(const TrainerOptions&, const TrainerOptions&) = default;
};

struct ModelConfig {
  Variant variant = Variant::kInductive;
  bool use_neighborhood = true;
  double blend_alpha = 0.5;
  std::size_t k_neighbors = 10;
  TrainerOptions trainer;

  void validate() const;

  // Reads keys: variant, use_neighborhood, blend_alpha, k_neighbors, learning_rate,
  // batch_size, epochs, patience, l2_weight, dim, init_stddev, freeze_kernel.
  // Missing keys keep the values already in `base`.
  static ModelConfig from_config(const KeyValueConfig& cfg, ModelConfig base);
  static ModelConfig from_config(const KeyValueConfig& cfg) { return from_config(cfg, ModelConfig{}); }
  KeyValueConfig to_config() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Trained repurchase model. `base` is present iff the variant is transductive.
struct TaiwModel {
  ModelConfig config;
  KernelParams kernels;
  std::optional<BaseIntensityModel> base;

  std::size_t num_items() const { return kernels.num_items(); }

  friend bool operator==(const TaiwModel&, const TaiwModel&) = default;
};

// Fresh parameters: data-driven kernels and, for TAIW, small random embeddings.
TaiwModel initialize_model(const DatasetSplit& split, const ModelConfig& cfg, std::uint64_t seed);

// Sum of gamma_i(t - t_j) over purchases of `item` strictly before t.
double kernel_sum(ItemId item, Timestamp t, const PurchaseIndex& purchases, const KernelParams& params);

// Relevance of `item` for `user` at time t.
double intensity(UserId user, ItemId item, Timestamp t, const PurchaseIndex& purchases,
                 const TaiwModel& model);
double intensity(UserId user, ItemId item, Timestamp t, const UserHistory& history,
                 const TaiwModel& model);

// Intensities of every item at time t. Sparse (support = items bought before t) for TAIWI,
// dense for TAIW.
UserVector user_vector(UserId user, Timestamp t, const PurchaseIndex& purchases, const TaiwModel& model);
UserVector user_vector(UserId user, Timestamp t, const UserHistory& history, const TaiwModel& model);

}  // namespace taiw
