#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "taiw/config.hpp"
#include "taiw/data.hpp"

namespace taiw {

enum class DomainKind { kUniform, kLogUniform, kInt, kChoice };

struct Domain {
  std::string name;
  DomainKind kind = DomainKind::kUniform;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::string> choices;

  std::string sample(std::mt19937_64& rng) const;
  bool contains(const std::string& value) const;
};

// Hyperparameter domains, one per line:
//   learning_rate = loguniform 0.001 0.05
//   blend_alpha   = uniform 0 1
//   k_neighbors   = int 5 50
//   batch_size    = choice 64 128 256
class SearchSpace {
 public:
  // Throws ConfigError on an unknown domain kind or an empty/inverted range.
  static SearchSpace from_config(const KeyValueConfig& cfg);
  // Built-in spaces for "taiw", "taiwi", "tifu-knn" and "gp-pop" (empty).
  static SearchSpace defaults(const std::string& model);

  void add(Domain d);
  const std::vector<Domain>& domains() const { return domains_; }
  bool empty() const { return domains_.empty(); }

  // One point, drawing domains in name order.
  KeyValueConfig sample(std::mt19937_64& rng) const;
  // JSON object of a sampled point, numbers for numeric domains.
  std::string to_json(const KeyValueConfig& point) const;

 private:
  std::vector<Domain> domains_;  // sorted by name
};

// splitmix64 of (seed, trial index).
std::uint64_t trial_seed(std::uint64_t search_seed, std::size_t trial);

struct Trial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  KeyValueConfig params;
  double val_ndcg10 = 0.0;
  bool ok = false;
  std::string error;
};

struct SearchResult {
  std::vector<Trial> trials;
  std::optional<std::size_t> best;  // index into trials; empty if every trial failed

  const Trial& best_trial() const;
};

// Returns the validation NDCG@10 of a configuration. Exceptions mark the trial failed.
using Objective = std::function<double(const KeyValueConfig& params, std::uint64_t seed)>;

// `trials` independent samples. The best is the highest objective, earliest trial on ties.
SearchResult random_search(const SearchSpace& space, std::size_t trials, std::uint64_t seed,
                           const Objective& objective);

// trial,params_json,val_ndcg10,status
void write_trial_log(std::ostream& out, const SearchSpace& space, const SearchResult& result);

}  // namespace taiw
