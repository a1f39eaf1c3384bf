#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "taiw/config.hpp"
#include "taiw/data.hpp"
#include "taiw/neighborhood.hpp"
#include "taiw/user_vector.hpp"

namespace taiw {

// Number of training baskets containing each item, over all users.
std::vector<double> global_counts(std::span<const UserHistory> train, std::size_t num_items);

// GP-Pop: personal basket counts first, global popularity as the tie-breaker and as the order
// of never-bought items. Encoded as count + global / (max_global + 1), so every bought item
// outranks every unbought one.
std::vector<double> gp_pop_scores(const UserHistory& history, std::span<const double> global_counts);

struct TifuConfig {
  std::size_t k_neighbors = 100;
  std::size_t group_count = 7;
  double within_group_decay = 0.9;
  double group_decay = 0.7;
  double blend_alpha = 0.7;

  void validate() const;
  // Keys: k_neighbors, group_count, within_group_decay, group_decay, blend_alpha.
  static TifuConfig from_config(const KeyValueConfig& cfg, TifuConfig base);
  static TifuConfig from_config(const KeyValueConfig& cfg) { return from_config(cfg, TifuConfig{}); }
  KeyValueConfig to_config() const;
};

// Personalised item frequency vector. Baskets are cut into m = min(group_count, #baskets)
// contiguous groups (the earliest group absorbs the remainder); a basket weighs
// within_group_decay^(baskets after it in its group) * group_decay^(groups after its group);
// the result is the mean of the m weighted group sums.
UserVector pif_vector(const UserHistory& history, std::size_t num_items, const TifuConfig& cfg);

// TIFU-KNN: PIF vectors blended with the mean PIF of the k nearest training users.
class TifuKnn {
 public:
  TifuKnn(std::span<const UserHistory> train, std::size_t num_items, TifuConfig cfg);

  std::vector<double> scores(UserId user, const UserHistory& known) const;
  const TifuConfig& config() const { return cfg_; }

 private:
  std::size_t num_items_;
  TifuConfig cfg_;
  NeighborIndex index_;
};

}  // namespace taiw
