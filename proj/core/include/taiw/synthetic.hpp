#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "taiw/config.hpp"
#include "taiw/data.hpp"

namespace taiw {

// Repurchase-gap generator. Each item is either periodic (Gaussian gaps around one of
// `periodic_means`) or memoryless (exponential gaps). Every user adopts a few items, picked by
// a Zipf popularity law, and rebuys each as a renewal process; events are floored to whole days
// and merged into one basket per day. With churn_days > 0 an adopted item is dropped after an
// exponential lifetime and replaced by a fresh draw. Occasional one-off noise items are mixed in.
struct SyntheticConfig {
  std::size_t num_users = 500;
  std::size_t num_items = 50;
  double horizon_days = 100.0;
  double periodic_fraction = 0.5;
  std::vector<double> periodic_means{7.0, 30.0};
  double sigma_ratio = 0.1;
  double exp_mean_min = 5.0;
  double exp_mean_max = 40.0;
  std::size_t min_items_per_user = 3;
  std::size_t max_items_per_user = 6;
  double churn_days = 0.0;  // mean adoption lifetime; 0 keeps items forever
  double noise_prob = 0.1;
  double zipf_exponent = 0.8;

  void validate() const;
  // Keys match the field names; periodic_means is a space-separated list.
  static SyntheticConfig from_config(const KeyValueConfig& cfg, SyntheticConfig base);
  static SyntheticConfig from_config(const KeyValueConfig& cfg) { return from_config(cfg, SyntheticConfig{}); }
  KeyValueConfig to_config() const;
};

struct PlantedPattern {
  ItemId item = 0;
  bool periodic = false;
  double mean_gap = 0.0;
  double sigma = 0.0;  // zero for exponential items
};

struct SyntheticData {
  InteractionLog log;
  std::vector<PlantedPattern> patterns;  // indexed by ItemId
};

// Deterministic for a given seed. Every user gets at least three baskets.
// Throws ConfigError for zero users or items or an invalid configuration.
SyntheticData generate_synthetic(const SyntheticConfig& cfg, std::uint64_t seed);

// item,kind,mean_gap,sigma
void write_patterns_csv(std::ostream& out, const SyntheticData& data);

}  // namespace taiw
