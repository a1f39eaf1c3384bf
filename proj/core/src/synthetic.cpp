#include "taiw/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace taiw {
namespace {

std::vector<double> parse_list(const std::string& s) {
  std::istringstream in(s);
  std::vector<double> out;
  for (double v; in >> v;) out.push_back(v);
  if (!in.eof()) throw ConfigError("bad number list '" + s + "'");
  return out;
}

// Weighted draw of `k` distinct indices.
std::vector<ItemId> draw_distinct(std::vector<double> weights, std::size_t k, std::mt19937_64& rng) {
  std::vector<ItemId> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t n = 0; n < k; ++n) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double r = unit(rng) * total;
    std::size_t pick = weights.size() - 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] == 0.0) continue;
      if (r < weights[i]) {
        pick = i;
        break;
      }
      r -= weights[i];
    }
    while (weights[pick] == 0.0) --pick;
    out.push_back(static_cast<ItemId>(pick));
    weights[pick] = 0.0;
  }
  return out;
}

}  // namespace

void SyntheticConfig::validate() const {
  if (num_users == 0) throw ConfigError("synthetic data needs at least one user");
  if (num_items == 0) throw ConfigError("synthetic data needs at least one item");
  if (!(horizon_days > 0.0)) throw ConfigError("horizon_days must be positive");
  if (!(periodic_fraction >= 0.0 && periodic_fraction <= 1.0)) {
    throw ConfigError("periodic_fraction must lie in [0, 1]");
  }
  if (periodic_means.empty()) throw ConfigError("periodic_means is empty");
  for (double m : periodic_means) {
    if (!(m >= 1.0)) throw ConfigError("periodic means must be at least one day");
  }
  if (!(sigma_ratio > 0.0)) throw ConfigError("sigma_ratio must be positive");
  if (!(exp_mean_min >= 1.0 && exp_mean_max >= exp_mean_min)) {
    throw ConfigError("exponential mean range must satisfy 1 <= min <= max");
  }
  if (min_items_per_user == 0 || max_items_per_user < min_items_per_user || max_items_per_user > num_items) {
    throw ConfigError("items per user must satisfy 1 <= min <= max <= num_items");
  }
  if (!(churn_days >= 0.0)) throw ConfigError("churn_days must be non-negative");
  if (!(noise_prob >= 0.0 && noise_prob <= 1.0)) throw ConfigError("noise_prob must lie in [0, 1]");
  if (!(zipf_exponent >= 0.0)) throw ConfigError("zipf_exponent must be non-negative");
}

SyntheticConfig SyntheticConfig::from_config(const KeyValueConfig& cfg, SyntheticConfig base) {
  SyntheticConfig c = std::move(base);
  c.num_users = static_cast<std::size_t>(cfg.get_int("num_users", static_cast<long>(c.num_users)));
  c.num_items = static_cast<std::size_t>(cfg.get_int("num_items", static_cast<long>(c.num_items)));
  c.horizon_days = cfg.get_double("horizon_days", c.horizon_days);
  c.periodic_fraction = cfg.get_double("periodic_fraction", c.periodic_fraction);
  if (auto v = cfg.get("periodic_means")) c.periodic_means = parse_list(*v);
  c.sigma_ratio = cfg.get_double("sigma_ratio", c.sigma_ratio);
  c.exp_mean_min = cfg.get_double("exp_mean_min", c.exp_mean_min);
  c.exp_mean_max = cfg.get_double("exp_mean_max", c.exp_mean_max);
  c.min_items_per_user =
      static_cast<std::size_t>(cfg.get_int("min_items_per_user", static_cast<long>(c.min_items_per_user)));
  c.max_items_per_user =
      static_cast<std::size_t>(cfg.get_int("max_items_per_user", static_cast<long>(c.max_items_per_user)));
  c.churn_days = cfg.get_double("churn_days", c.churn_days);
  c.noise_prob = cfg.get_double("noise_prob", c.noise_prob);
  c.zipf_exponent = cfg.get_double("zipf_exponent", c.zipf_exponent);
  c.validate();
  return c;
}

KeyValueConfig SyntheticConfig::to_config() const {
  KeyValueConfig cfg;
  cfg.set("num_users", std::to_string(num_users));
  cfg.set("num_items", std::to_string(num_items));
  cfg.set("horizon_days", format_double(horizon_days));
  cfg.set("periodic_fraction", format_double(periodic_fraction));
  std::string means;
  for (double m : periodic_means) means += (means.empty() ? "" : " ") + format_double(m);
  cfg.set("periodic_means", means);
  cfg.set("sigma_ratio", format_double(sigma_ratio));
  cfg.set("exp_mean_min", format_double(exp_mean_min));
  cfg.set("exp_mean_max", format_double(exp_mean_max));
  cfg.set("min_items_per_user", std::to_string(min_items_per_user));
  cfg.set("max_items_per_user", std::to_string(max_items_per_user));
  cfg.set("churn_days", format_double(churn_days));
  cfg.set("noise_prob", format_double(noise_prob));
  cfg.set("zipf_exponent", format_double(zipf_exponent));
  return cfg;
}

SyntheticData generate_synthetic(const SyntheticConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  const std::size_t n_items = cfg.num_items;

  // Item roles are shuffled so popularity rank and gap type are independent.
  const auto n_periodic = static_cast<std::size_t>(std::llround(cfg.periodic_fraction * static_cast<double>(n_items)));
  std::vector<ItemId> roles(n_items);
  std::iota(roles.begin(), roles.end(), 0);
  std::shuffle(roles.begin(), roles.end(), rng);

  SyntheticData data;
  data.patterns.resize(n_items);
  std::uniform_real_distribution<double> exp_mean(cfg.exp_mean_min, cfg.exp_mean_max);
  for (std::size_t r = 0; r < n_items; ++r) {
    PlantedPattern& p = data.patterns[roles[r]];
    p.item = roles[r];
    if (r < n_periodic) {
      p.periodic = true;
      p.mean_gap = cfg.periodic_means[r % cfg.periodic_means.size()];
      p.sigma = cfg.sigma_ratio * p.mean_gap;
    } else {
      p.mean_gap = exp_mean(rng);
    }
  }

  std::vector<ItemId> rank(n_items);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<double> popularity(n_items);
  for (std::size_t r = 0; r < n_items; ++r) {
    popularity[rank[r]] = 1.0 / std::pow(static_cast<double>(r + 1), cfg.zipf_exponent);
  }

  for (std::size_t i = 0; i < n_items; ++i) data.log.items.encode("i" + std::to_string(i));

  std::uniform_int_distribution<std::size_t> n_adopt(cfg.min_items_per_user, cfg.max_items_per_user);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::discrete_distribution<std::size_t> pick_noise(popularity.begin(), popularity.end());

  auto renew = [&](const PlantedPattern& p, double start, double end, std::map<long, std::vector<ItemId>>& days) {
    double t = start + unit(rng) * p.mean_gap;
    while (t < end) {
      days[static_cast<long>(std::floor(t))].push_back(p.item);
      double gap = 0.0;
      if (p.periodic) {
        std::normal_distribution<double> g(p.mean_gap, p.sigma);
        gap = g(rng);
      } else {
        std::exponential_distribution<double> g(1.0 / p.mean_gap);
        gap = g(rng);
      }
      t += std::max(1.0, gap);
    }
  };

  for (std::size_t u = 0; u < cfg.num_users; ++u) {
    std::map<long, std::vector<ItemId>> days;
    while (days.size() < 3) {
      days.clear();
      std::vector<ItemId> slots = draw_distinct(popularity, n_adopt(rng), rng);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        double start = 0.0;
        while (start < cfg.horizon_days) {
          double end = cfg.horizon_days;
          if (cfg.churn_days > 0.0) {
            std::exponential_distribution<double> life(1.0 / cfg.churn_days);
            end = std::min(end, start + life(rng));
          }
          renew(data.patterns[slots[s]], start, end, days);
          start = end;
          if (start < cfg.horizon_days) {
            // Replacement avoids every item currently held by the user.
            std::vector<double> w = popularity;
            for (ItemId held : slots) w[held] = 0.0;
            slots[s] = draw_distinct(std::move(w), 1, rng).front();
          }
        }
      }
    }
    UserHistory h;
    h.user = data.log.users.encode("u" + std::to_string(u));
    for (auto& [day, items] : days) {
      if (unit(rng) < cfg.noise_prob) items.push_back(static_cast<ItemId>(pick_noise(rng)));
      h.baskets.push_back(make_basket(static_cast<double>(day), std::move(items)));
    }
    data.log.histories.push_back(std::move(h));
  }
  return data;
}

void write_patterns_csv(std::ostream& out, const SyntheticData& data) {
  out << "item,kind,mean_gap,sigma\n";
  for (const PlantedPattern& p : data.patterns) {
    out << data.log.items.decode(p.item) << ',' << (p.periodic ? "periodic" : "exponential") << ','
        << format_double(p.mean_gap) << ',' << format_double(p.sigma) << '\n';
  }
}

}  // namespace taiw
