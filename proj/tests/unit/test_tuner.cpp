#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "taiw/tuner.hpp"

using namespace taiw;

namespace {

SearchSpace space_of(std::initializer_list<std::pair<const char*, const char*>> lines) {
  KeyValueConfig cfg;
  for (const auto& [k, v] : lines) cfg.set(k, v);
  return SearchSpace::from_config(cfg);
}

}  // namespace

TEST(SearchSpace, ParseErrors) {
  EXPECT_THROW(space_of({{"a", "gaussian 0 1"}}), ConfigError);
  EXPECT_THROW(space_of({{"a", "uniform 1 0"}}), ConfigError);
  EXPECT_THROW(space_of({{"a", "uniform 0"}}), ConfigError);
  EXPECT_THROW(space_of({{"a", "loguniform 0 1"}}), ConfigError);
  EXPECT_THROW(space_of({{"a", "int 0.5 3"}}), ConfigError);
  EXPECT_THROW(space_of({{"a", "uniform x 3"}}), ConfigError);
  EXPECT_THROW(space_of({{"a", "choice"}}), ConfigError);
  EXPECT_THROW(SearchSpace::defaults("svd"), ConfigError);
  EXPECT_TRUE(SearchSpace::defaults("gp-pop").empty());
}

TEST(SearchSpace, SamplesStayInsideDomains) {
  for (const char* model : {"taiw", "taiwi", "tifu-knn"}) {
    const SearchSpace s = SearchSpace::defaults(model);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
      const KeyValueConfig p = s.sample(rng);
      ASSERT_EQ(p.entries().size(), s.domains().size());
      for (const Domain& d : s.domains()) {
        EXPECT_TRUE(d.contains(*p.get(d.name))) << model << " " << d.name << "=" << *p.get(d.name);
      }
    }
  }
}

TEST(SearchSpace, IntDomainReachesBothEnds) {
  const SearchSpace s = space_of({{"k", "int 2 4"}});
  std::mt19937_64 rng(4);
  std::set<std::string> seen;
  for (int n = 0; n < 200; ++n) seen.insert(*s.sample(rng).get("k"));
  EXPECT_EQ(seen, (std::set<std::string>{"2", "3", "4"}));
}

TEST(SearchSpace, JsonUsesNumbersForNumericDomains) {
  const SearchSpace s = space_of({{"b", "choice 64 128"}, {"a", "uniform 0 1"}, {"k", "int 1 3"}});
  KeyValueConfig p;
  p.set("a", "0.25");
  p.set("b", "64");
  p.set("k", "2");
  EXPECT_EQ(s.to_json(p), R"({"a":0.25,"b":"64","k":2})");
}

TEST(RandomSearch, SingleTrial) {
  const SearchSpace s = SearchSpace::defaults("taiwi");
  const auto r = random_search(s, 1, 3, [](const KeyValueConfig&, std::uint64_t) { return 0.4; });
  ASSERT_EQ(r.trials.size(), 1u);
  EXPECT_EQ(r.best_trial().index, 0u);
  EXPECT_THROW(random_search(s, 0, 3, [](const KeyValueConfig&, std::uint64_t) { return 0.0; }),
               std::invalid_argument);
}

TEST(RandomSearch, ConstantObjectiveKeepsFirstTrial) {
  const SearchSpace s = SearchSpace::defaults("taiwi");
  const auto r = random_search(s, 10, 3, [](const KeyValueConfig&, std::uint64_t) { return 0.25; });
  EXPECT_EQ(*r.best, 0u);
}

TEST(RandomSearch, PicksMaximumAndRecordsFailures) {
  const SearchSpace s = space_of({{"x", "uniform 0 1"}});
  const auto r = random_search(s, 12, 9, [](const KeyValueConfig& p, std::uint64_t) {
    const double x = p.get_double("x", 0);
    if (x > 0.8) throw std::runtime_error("diverged");
    if (x < 0.1) return std::nan("");
    return x;
  });
  double best = -1.0;
  std::size_t best_i = 0, failed = 0;
  for (const Trial& t : r.trials) {
    const double x = t.params.get_double("x", 0);
    EXPECT_EQ(t.ok, x <= 0.8 && x >= 0.1);
    if (!t.ok) {
      ++failed;
      EXPECT_FALSE(t.error.empty());
    } else if (t.val_ndcg10 > best) {
      best = t.val_ndcg10;
      best_i = t.index;
    }
  }
  EXPECT_EQ(*r.best, best_i);
  std::ostringstream log;
  write_trial_log(log, s, r);
  const std::string text = log.str();
  std::size_t lines = 0, failed_lines = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line); ++lines) {
    if (line.size() >= 7 && line.compare(line.size() - 7, 7, ",failed") == 0) ++failed_lines;
  }
  EXPECT_EQ(lines, 13u);
  EXPECT_EQ(failed_lines, failed);
  EXPECT_EQ(text.rfind("trial,params_json,val_ndcg10,status\n0,\"{\"\"x\"\":", 0), 0u) << text;
}

TEST(RandomSearch, AllFailedHasNoBest) {
  const SearchSpace s = space_of({{"x", "uniform 0 1"}});
  const auto r = random_search(s, 3, 1, [](const KeyValueConfig&, std::uint64_t) -> double {
    throw std::runtime_error("no");
  });
  EXPECT_FALSE(r.best.has_value());
  EXPECT_THROW(r.best_trial(), std::runtime_error);
}

TEST(RandomSearch, DeterministicForSeed) {
  const SearchSpace s = SearchSpace::defaults("taiw");
  auto obj = [](const KeyValueConfig& p, std::uint64_t seed) {
    return p.get_double("blend_alpha", 0) + static_cast<double>(seed % 7) * 0.01;
  };
  const auto a = random_search(s, 8, 42, obj);
  const auto b = random_search(s, 8, 42, obj);
  const auto c = random_search(s, 8, 43, obj);
  std::ostringstream la, lb, lc;
  write_trial_log(la, s, a);
  write_trial_log(lb, s, b);
  write_trial_log(lc, s, c);
  EXPECT_EQ(la.str(), lb.str());
  EXPECT_NE(la.str(), lc.str());
  EXPECT_NE(trial_seed(42, 0), trial_seed(42, 1));
}
