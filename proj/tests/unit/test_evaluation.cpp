#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "taiw/evaluation.hpp"
#include "taiw/ingestion.hpp"
#include "test_util.hpp"

using namespace taiw;

namespace {

// Knows the answer: scores the held-out basket's items highest.
class OracleScorer final : public Scorer {
 public:
  explicit OracleScorer(const DatasetSplit& s) : split_(s) {}
  std::string name() const override { return "oracle"; }
  std::vector<double> score(UserId user, const UserHistory&, Timestamp target) const override {
    std::vector<double> out(split_.num_items, 0.0);
    const Basket& b = target == split_.test[user].time ? split_.test[user] : split_.validation[user];
    for (ItemId i : b.items) out[i] = 1.0;
    return out;
  }

 private:
  const DatasetSplit& split_;
};

class RandomScorer final : public Scorer {
 public:
  RandomScorer(std::size_t items, std::uint64_t seed) : items_(items), seed_(seed) {}
  std::string name() const override { return "random"; }
  std::vector<double> score(UserId user, const UserHistory&, Timestamp) const override {
    std::mt19937_64 rng(seed_ * 1000003 + user);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> out(items_);
    for (double& x : out) x = u(rng);
    return out;
  }

 private:
  std::size_t items_;
  std::uint64_t seed_;
};

// Fails the test if it is ever shown a basket at or after the target time.
class LeakCheckScorer final : public Scorer {
 public:
  explicit LeakCheckScorer(std::size_t items) : items_(items) {}
  std::string name() const override { return "leak"; }
  std::vector<double> score(UserId, const UserHistory& known, Timestamp target) const override {
    for (const Basket& b : known.baskets) EXPECT_LT(b.time, target);
    return std::vector<double>(items_, 0.0);
  }

 private:
  std::size_t items_;
};

TaiwModel small_taiwi(const DatasetSplit& s) {
  ModelConfig cfg;
  cfg.variant = Variant::kInductive;
  cfg.k_neighbors = 3;
  return initialize_model(s, cfg, 1);
}

}  // namespace

TEST(Evaluate, PerfectScorerIsPerfect) {
  const DatasetSplit s = taiw::testing::random_split(20, 15, 6, 1);
  const std::size_t ks[] = {5, 10};
  for (Stage st : {Stage::kValidation, Stage::kTest}) {
    const EvalReport r = evaluate(OracleScorer(s), s, st, ks);
    EXPECT_EQ(r.users.size(), 20u);
    EXPECT_DOUBLE_EQ(r.ndcg(10), 1.0);
    EXPECT_DOUBLE_EQ(r.recall(10), 1.0);
    EXPECT_DOUBLE_EQ(r.ndcg(5), 1.0);
  }
}

TEST(Evaluate, RandomScorerMatchesExpectation) {
  const std::size_t items = 20;
  const DatasetSplit s = taiw::testing::random_split(3000, items, 3, 2);
  const std::size_t ks[] = {5};
  const EvalReport r = evaluate(RandomScorer(items, 3), s, Stage::kTest, ks);
  double expected_p = 0.0, expected_r = 0.0;
  for (const Basket& b : s.test) {
    expected_p += static_cast<double>(b.items.size()) / items;
    expected_r += 5.0 / items;
  }
  expected_p /= static_cast<double>(s.test.size());
  expected_r /= static_cast<double>(s.test.size());
  EXPECT_NEAR(r.precision(5), expected_p, 0.01);
  EXPECT_NEAR(r.recall(5), expected_r, 0.015);
}

TEST(Evaluate, NeverSeesHeldOutBasket) {
  const DatasetSplit s = taiw::testing::random_split(10, 8, 5, 3);
  const std::size_t ks[] = {3};
  evaluate(LeakCheckScorer(8), s, Stage::kValidation, ks);
  evaluate(LeakCheckScorer(8), s, Stage::kTest, ks);
}

TEST(Evaluate, KLookupAndEmptyKs) {
  const DatasetSplit s = taiw::testing::random_split(4, 8, 5, 3);
  const std::size_t ks[] = {3};
  const EvalReport r = evaluate(RandomScorer(8, 1), s, Stage::kTest, ks);
  EXPECT_THROW(r.ndcg(10), std::out_of_range);
  EXPECT_THROW(evaluate(RandomScorer(8, 1), s, Stage::kTest, std::span<const std::size_t>{}), std::invalid_argument);
}

TEST(EvaluateModel, SameSeedsSameNumbersAndMeanOfSeeds) {
  const DatasetSplit s = taiw::testing::random_split(30, 10, 5, 4);
  const std::size_t ks[] = {2, 5};
  const std::uint64_t seeds[] = {1, 2, 3};
  ScorerFactory f = [](std::uint64_t seed) { return std::make_unique<RandomScorer>(10, seed); };
  const MultiSeedReport a = evaluate_model(f, s, Stage::kTest, ks, seeds);
  const MultiSeedReport b = evaluate_model(f, s, Stage::kTest, ks, seeds);
  EXPECT_EQ(a.mean_ndcg, b.mean_ndcg);
  ASSERT_EQ(a.per_seed.size(), 3u);
  EXPECT_EQ(a.per_seed[1].seed, 2u);
  const double m = (a.per_seed[0].ndcg(5) + a.per_seed[1].ndcg(5) + a.per_seed[2].ndcg(5)) / 3.0;
  EXPECT_NEAR(a.mean_ndcg[1], m, 1e-15);
}

TEST(GapBuckets, RecombineToGlobalMean) {
  const DatasetSplit s = taiw::testing::random_split(47, 10, 5, 5);
  const std::size_t ks[] = {10};
  const EvalReport r = evaluate(RandomScorer(10, 9), s, Stage::kTest, ks);
  const auto buckets = assign_gap_buckets(s, 5);
  const auto report = gap_bucket_report(r, buckets, 5);
  double weighted = 0.0;
  std::size_t users = 0;
  for (const BucketMean& b : report) {
    weighted += b.ndcg * static_cast<double>(b.users);
    users += b.users;
  }
  EXPECT_EQ(users, 47u);
  EXPECT_NEAR(weighted / 47.0, r.ndcg(10), 1e-12);
  const auto one = gap_bucket_report(r, assign_gap_buckets(s, 1), 1);
  EXPECT_NEAR(one[0].ndcg, r.ndcg(10), 1e-12);
}

TEST(Evaluate, UserOrderDoesNotChangeMeans) {
  DatasetSplit s = taiw::testing::random_split(25, 10, 5, 6);
  const std::size_t ks[] = {5};
  const EvalReport a = evaluate(GpPopScorer(s.train, 10), s, Stage::kTest, ks);
  // Reverse the user order, keeping ids consistent.
  DatasetSplit r = s;
  std::reverse(r.train.begin(), r.train.end());
  std::reverse(r.validation.begin(), r.validation.end());
  std::reverse(r.test.begin(), r.test.end());
  for (UserId u = 0; u < r.train.size(); ++u) r.train[u].user = u;
  const EvalReport b = evaluate(GpPopScorer(r.train, 10), r, Stage::kTest, ks);
  EXPECT_NEAR(a.ndcg(5), b.ndcg(5), 1e-12);
  EXPECT_NEAR(a.recall(5), b.recall(5), 1e-12);
}

TEST(AlphaSweep, AlphaOneEqualsNoNeighbourhood) {
  const DatasetSplit s = taiw::testing::random_split(12, 10, 6, 7);
  const TaiwScorer scorer(small_taiwi(s), s.train);
  const double alphas[] = {0.0, 0.5, 1.0};
  const auto curve = alpha_sweep(scorer, s, alphas);
  ASSERT_EQ(curve.size(), 3u);
  const std::size_t ks[] = {10};
  const EvalReport own = evaluate(scorer.with_blend(false, 0.5), s, Stage::kTest, ks);
  EXPECT_EQ(curve[2].ndcg10, own.ndcg(10));
  EXPECT_EQ(curve[2].recall10, own.recall(10));
  EXPECT_THROW(scorer.with_blend(true, -0.1), std::invalid_argument);
}

TEST(Writers, CsvShapes) {
  const DatasetSplit s = taiw::testing::random_split(6, 10, 5, 8);
  const std::size_t ks[] = {5, 10};
  EvalReport r = evaluate(GpPopScorer(s.train, 10), s, Stage::kTest, ks);
  r.seed = 4;
  std::ostringstream out;
  write_metrics_header(out);
  write_metrics_rows(out, r);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("model,seed,K,precision,recall,ndcg\ngp-pop,4,5,", 0), 0u) << text;
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}
