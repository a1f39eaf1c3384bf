#include "taiw/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taiw {

std::vector<double> global_counts(std::span<const UserHistory> train, std::size_t num_items) {
  std::vector<double> counts(num_items, 0.0);
  for (const UserHistory& h : train) {
    for (const Basket& b : h.baskets) {
      for (ItemId i : b.items) counts.at(i) += 1.0;
    }
  }
  return counts;
}

std::vector<double> gp_pop_scores(const UserHistory& history, std::span<const double> global_counts) {
  const double max_global = global_counts.empty()
                                ? 0.0
                                : *std::max_element(global_counts.begin(), global_counts.end());
  const double scale = 1.0 / (max_global + 1.0);
  std::vector<double> scores(global_counts.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = global_counts[i] * scale;
  }
  for (const Basket& b : history.baskets) {
    for (ItemId i : b.items) scores.at(i) += 1.0;
  }
  return scores;
}

void TifuConfig::validate() const {
  if (group_count < 1) throw ConfigError("group_count must be >= 1");
  if (k_neighbors < 1) throw ConfigError("k_neighbors must be >= 1");
  if (!(within_group_decay > 0.0 && within_group_decay <= 1.0)) {
    throw ConfigError("within_group_decay must lie in (0, 1]");
  }
  if (!(group_decay > 0.0 && group_decay <= 1.0)) {
    throw ConfigError("group_decay must lie in (0, 1]");
  }
  if (!(blend_alpha >= 0.0 && blend_alpha <= 1.0)) {
    throw ConfigError("blend_alpha must lie in [0, 1]");
  }
}

TifuConfig TifuConfig::from_config(const KeyValueConfig& cfg, TifuConfig base) {
  TifuConfig c = base;
  c.k_neighbors = static_cast<std::size_t>(cfg.get_int("k_neighbors", static_cast<long>(c.k_neighbors)));
  c.group_count = static_cast<std::size_t>(cfg.get_int("group_count", static_cast<long>(c.group_count)));
  c.within_group_decay = cfg.get_double("within_group_decay", c.within_group_decay);
  c.group_decay = cfg.get_double("group_decay", c.group_decay);
  c.blend_alpha = cfg.get_double("blend_alpha", c.blend_alpha);
  c.validate();
  return c;
}

KeyValueConfig TifuConfig::to_config() const {
  KeyValueConfig cfg;
  cfg.set("k_neighbors", std::to_string(k_neighbors));
  cfg.set("group_count", std::to_string(group_count));
  cfg.set("within_group_decay", format_double(within_group_decay));
  cfg.set("group_decay", format_double(group_decay));
  cfg.set("blend_alpha", format_double(blend_alpha));
  return cfg;
}

UserVector pif_vector(const UserHistory& history, std::size_t num_items, const TifuConfig& cfg) {
  cfg.validate();
  const std::size_t n = history.baskets.size();
  if (n == 0) {
    return UserVector::sparse(num_items, {});
  }
  // Short histories use one group per basket.
  const std::size_t m = std::min(cfg.group_count, n);
  const std::size_t base = n / m;
  const std::size_t first = base + n % m;

  std::vector<std::pair<ItemId, double>> entries;
  std::size_t start = 0;
  for (std::size_t g = 0; g < m; ++g) {
    const std::size_t size = g == 0 ? first : base;
    const double group_weight = std::pow(cfg.group_decay, static_cast<double>(m - 1 - g));
    for (std::size_t p = 0; p < size; ++p) {
      const double w =
          group_weight * std::pow(cfg.within_group_decay, static_cast<double>(size - 1 - p));
      for (ItemId i : history.baskets[start + p].items) {
        entries.emplace_back(i, w);
      }
    }
    start += size;
  }
  UserVector v = UserVector::sparse(num_items, std::move(entries));
  if (m == 1) {
    return v;
  }
  std::vector<std::pair<ItemId, double>> scaled;
  const double inv = 1.0 / static_cast<double>(m);
  v.for_each([&](ItemId i, double x) { scaled.emplace_back(i, x * inv); });
  return UserVector::sparse(num_items, std::move(scaled));
}

TifuKnn::TifuKnn(std::span<const UserHistory> train, std::size_t num_items, TifuConfig cfg)
    : num_items_(num_items), cfg_(cfg) {
  cfg_.validate();
  std::vector<UserVector> rows;
  rows.reserve(train.size());
  for (const UserHistory& h : train) {
    rows.push_back(pif_vector(h, num_items_, cfg_));
  }
  index_ = NeighborIndex(std::move(rows));
}

std::vector<double> TifuKnn::scores(UserId user, const UserHistory& known) const {
  const UserVector own = pif_vector(known, num_items_, cfg_);
  const std::optional<UserId> self = user < index_.size() ? std::optional<UserId>(user) : std::nullopt;
  const std::size_t available = index_.size() - (self ? 1 : 0);
  const auto neighbors = knn(own, index_, std::min(cfg_.k_neighbors, available), self);
  return blend(own, index_, neighbors, cfg_.blend_alpha);
}

}  // namespace taiw
