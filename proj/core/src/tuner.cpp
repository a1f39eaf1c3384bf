#include "taiw/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "taiw/data.hpp"

namespace taiw {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double to_number(const std::string& s, const std::string& name) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw ConfigError("search space '" + name + "': bad number '" + s + "'");
  }
  return v;
}

Domain parse_domain(const std::string& name, const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  std::vector<std::string> args;
  for (std::string a; in >> a;) args.push_back(a);

  Domain d;
  d.name = name;
  if (kind == "choice") {
    if (args.empty()) throw ConfigError("search space '" + name + "': choice needs at least one value");
    d.kind = DomainKind::kChoice;
    d.choices = args;
    return d;
  }
  if (kind == "uniform") {
    d.kind = DomainKind::kUniform;
  } else if (kind == "loguniform") {
    d.kind = DomainKind::kLogUniform;
  } else if (kind == "int") {
    d.kind = DomainKind::kInt;
  } else {
    throw ConfigError("search space '" + name + "': unknown domain '" + kind + "'");
  }
  if (args.size() != 2) throw ConfigError("search space '" + name + "': expected two bounds");
  d.lo = to_number(args[0], name);
  d.hi = to_number(args[1], name);
  if (d.lo > d.hi) throw ConfigError("search space '" + name + "': lower bound above upper bound");
  if (d.kind == DomainKind::kLogUniform && d.lo <= 0.0) {
    throw ConfigError("search space '" + name + "': loguniform bounds must be positive");
  }
  if (d.kind == DomainKind::kInt && (d.lo != std::floor(d.lo) || d.hi != std::floor(d.hi))) {
    throw ConfigError("search space '" + name + "': int bounds must be integers");
  }
  return d;
}

}  // namespace

std::string Domain::sample(std::mt19937_64& rng) const {
  switch (kind) {
    case DomainKind::kUniform: {
      std::uniform_real_distribution<double> dist(lo, hi);
      return format_double(lo == hi ? lo : dist(rng));
    }
    case DomainKind::kLogUniform: {
      std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
      const double v = lo == hi ? lo : std::exp(dist(rng));
      return format_double(std::clamp(v, lo, hi));
    }
    case DomainKind::kInt: {
      std::uniform_int_distribution<long> dist(static_cast<long>(lo), static_cast<long>(hi));
      return std::to_string(dist(rng));
    }
    case DomainKind::kChoice: {
      std::uniform_int_distribution<std::size_t> dist(0, choices.size() - 1);
      return choices[dist(rng)];
    }
  }
  return {};
}

bool Domain::contains(const std::string& value) const {
  if (kind == DomainKind::kChoice) {
    return std::find(choices.begin(), choices.end(), value) != choices.end();
  }
  double v = 0.0;
  try {
    v = to_number(value, name);
  } catch (const ConfigError&) {
    return false;
  }
  if (kind == DomainKind::kInt && v != std::floor(v)) return false;
  return v >= lo && v <= hi;
}

SearchSpace SearchSpace::from_config(const KeyValueConfig& cfg) {
  SearchSpace space;
  for (const auto& [key, value] : cfg.entries()) {
    space.add(parse_domain(key, value));
  }
  return space;
}

SearchSpace SearchSpace::defaults(const std::string& model) {
  KeyValueConfig cfg;
  if (model == "taiw" || model == "taiwi") {
    cfg.set("learning_rate", "loguniform 0.001 0.05");
    cfg.set("batch_size", "choice 64 128 256 512");
    cfg.set("k_neighbors", "int 5 50");
    cfg.set("blend_alpha", "uniform 0 1");
    if (model == "taiw") {
      cfg.set("l2_weight", "loguniform 0.000001 0.01");
      cfg.set("dim", "choice 16 32 64");
    }
  } else if (model == "tifu-knn") {
    cfg.set("k_neighbors", "int 10 300");
    cfg.set("group_count", "int 2 20");
    cfg.set("within_group_decay", "uniform 0.1 1");
    cfg.set("group_decay", "uniform 0.1 1");
    cfg.set("blend_alpha", "uniform 0 1");
  } else if (model != "gp-pop") {
    throw ConfigError("no default search space for model '" + model + "'");
  }
  return from_config(cfg);
}

void SearchSpace::add(Domain d) {
  auto it = std::lower_bound(domains_.begin(), domains_.end(), d.name,
                             [](const Domain& a, const std::string& n) { return a.name < n; });
  if (it != domains_.end() && it->name == d.name) {
    *it = std::move(d);
  } else {
    domains_.insert(it, std::move(d));
  }
}

KeyValueConfig SearchSpace::sample(std::mt19937_64& rng) const {
  KeyValueConfig point;
  for (const Domain& d : domains_) {
    point.set(d.name, d.sample(rng));
  }
  return point;
}

std::string SearchSpace::to_json(const KeyValueConfig& point) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : point.entries()) {
    auto it = std::find_if(domains_.begin(), domains_.end(), [&](const Domain& d) { return d.name == key; });
    if (it == domains_.end() || it->kind == DomainKind::kChoice) {
      j[key] = value;
    } else if (it->kind == DomainKind::kInt) {
      j[key] = std::stol(value);
    } else {
      j[key] = std::stod(value);
    }
  }
  return j.dump();
}

std::uint64_t trial_seed(std::uint64_t search_seed, std::size_t trial) {
  return splitmix64(splitmix64(search_seed) ^ static_cast<std::uint64_t>(trial));
}

const Trial& SearchResult::best_trial() const {
  if (!best) throw std::runtime_error("every tuning trial failed");
  return trials[*best];
}

SearchResult random_search(const SearchSpace& space, std::size_t trials, std::uint64_t seed,
                           const Objective& objective) {
  if (trials == 0) {
    throw std::invalid_argument("random_search needs at least one trial");
  }
  SearchResult result;
  for (std::size_t t = 0; t < trials; ++t) {
    Trial trial;
    trial.index = t;
    trial.seed = trial_seed(seed, t);
    std::mt19937_64 rng(trial.seed);
    trial.params = space.sample(rng);
    try {
      trial.val_ndcg10 = objective(trial.params, trial.seed);
      trial.ok = std::isfinite(trial.val_ndcg10);
      if (!trial.ok) trial.error = "non-finite objective";
    } catch (const std::exception& e) {
      trial.ok = false;
      trial.error = e.what();
    }
    if (trial.ok && (!result.best || trial.val_ndcg10 > result.trials[*result.best].val_ndcg10)) {
      result.best = t;
    }
    result.trials.push_back(std::move(trial));
  }
  return result;
}

void write_trial_log(std::ostream& out, const SearchSpace& space, const SearchResult& result) {
  out << "trial,params_json,val_ndcg10,status\n";
  for (const Trial& t : result.trials) {
    std::string json = space.to_json(t.params);
    std::string quoted = "\"";
    for (char c : json) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    out << t.index << ',' << quoted << ',' << (t.ok ? format_double(t.val_ndcg10) : std::string("nan")) << ','
        << (t.ok ? "ok" : "failed") << '\n';
  }
}

}  // namespace taiw
