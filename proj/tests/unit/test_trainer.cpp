#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "taiw/trainer.hpp"
#include "test_util.hpp"

using namespace taiw;
using taiw::testing::history;

TEST(SampleNegative, OnlyOneChoice) {
  std::mt19937_64 rng(1);
  const std::vector<ItemId> consumed{0, 1, 3, 4};
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_negative(consumed, 5, rng), 2u);
  const std::vector<ItemId> all{0, 1, 2};
  EXPECT_THROW(sample_negative(all, 3, rng), std::runtime_error);
}

TEST(SampleNegative, NeverReturnsConsumed) {
  std::mt19937_64 rng(2);
  const UserHistory h = history(0, {{0, {2, 5}}, {1, {7, 8, 19}}});
  for (int k = 0; k < 10000; ++k) {
    const ItemId i = sample_negative(h, 20, rng);
    EXPECT_LT(i, 20u);
    EXPECT_TRUE(i != 2 && i != 5 && i != 7 && i != 8 && i != 19) << i;
  }
}

TEST(SampleNegative, UniformOverEligible) {
  std::mt19937_64 rng(3);
  const std::vector<ItemId> consumed{1, 4, 5, 9, 12};  // 15 items, 10 eligible
  std::map<ItemId, int> counts;
  const int n = 100000;
  for (int k = 0; k < n; ++k) ++counts[sample_negative(consumed, 15, rng)];
  ASSERT_EQ(counts.size(), 10u);
  double chi2 = 0.0;
  const double expected = n / 10.0;
  for (const auto& [item, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 9 degrees of freedom, p = 0.001
  EXPECT_LT(chi2, 27.88);
}

TEST(BprLoss, KnownValues) {
  EXPECT_NEAR(bpr_pair_loss(0, 0).loss, std::log(2.0), 1e-15);
  EXPECT_NEAR(bpr_pair_loss(0, 0).dmargin, -0.5, 1e-15);
  EXPECT_LT(bpr_pair_loss(20, 0).loss, 1e-8);
  EXPECT_NEAR(bpr_pair_loss(1, 0).loss, 0.313262, 1e-6);
  EXPECT_NEAR(bpr_pair_loss(-800, 0).loss, 800.0, 1e-9);
  const double h = 1e-6;
  const double fd = (bpr_pair_loss(0.3 + h, 0).loss - bpr_pair_loss(0.3 - h, 0).loss) / (2 * h);
  EXPECT_NEAR(bpr_pair_loss(0.3, 0).dmargin, fd, 1e-8);
}

TEST(BuildExamples, InductiveSkipsFirstBasket) {
  const std::vector<UserHistory> train{history(0, {{0, {0, 1}}, {2, {1}}, {5, {0, 2}}})};
  const auto all = build_examples(train, Variant::kTransductive);
  EXPECT_EQ(all.size(), 5u);
  EXPECT_EQ(all.front(), (TrainExample{0, 0, 0, 0.0}));
  const auto ind = build_examples(train, Variant::kInductive);
  ASSERT_EQ(ind.size(), 3u);
  EXPECT_EQ(ind.front(), (TrainExample{0, 1, 1, 2.0}));
}

namespace {

TaiwModel toy_model(Variant v, const DatasetSplit& s) {
  ModelConfig cfg;
  cfg.variant = v;
  cfg.trainer.dim = 3;
  cfg.trainer.init_stddev = 0.5;
  cfg.trainer.l2_weight = 0.05;
  TaiwModel m = initialize_model(s, cfg, 17);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> jitter(0.0, 0.3);
  for (double& r : m.kernels.raw_values()) r += jitter(rng);
  if (m.base) {
    for (double& b : m.base->item_bias()) b = jitter(rng);
  }
  return m;
}

void check_gradient(Variant v) {
  const std::vector<UserHistory> full{
      history(0, {{0, {0, 1}}, {3, {0}}, {7, {0, 2}}, {9, {1}}, {12, {0}}}),
      history(1, {{1, {2}}, {4, {2, 3}}, {6, {2}}, {8, {3}}, {15, {2}}}),
      history(2, {{0, {1}}, {2, {1}}, {5, {0, 1}}, {11, {1}}, {13, {0}}}),
  };
  const DatasetSplit s = taiw::testing::split_of(full, 4);
  TaiwModel m = toy_model(v, s);
  const ParameterLayout layout(m);
  const TrainingData data(s.train, 4);
  const auto examples = build_examples(s.train, v);
  std::mt19937_64 rng(9);
  std::vector<ItemId> neg;
  for (const auto& e : examples) neg.push_back(sample_negative(data.consumed(e.user), 4, rng));

  SparseGradient g(layout.size());
  batch_loss_and_gradient(m, layout, data, examples, neg, &g);
  const double h = 1e-6;
  int checked = 0;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    const double orig = layout.at(m, p);
    layout.at(m, p) = orig + h;
    const double up = batch_loss_and_gradient(m, layout, data, examples, neg, nullptr);
    layout.at(m, p) = orig - h;
    const double down = batch_loss_and_gradient(m, layout, data, examples, neg, nullptr);
    layout.at(m, p) = orig;
    const double fd = (up - down) / (2 * h);
    EXPECT_NEAR(g[p], fd, 1e-4 * std::max(std::abs(fd), std::abs(g[p])) + 1e-7) << "param " << p;
    if (fd != 0.0) ++checked;
  }
  EXPECT_GT(checked, 10);
}

}  // namespace

TEST(BatchGradient, TransductiveMatchesFiniteDifferences) { check_gradient(Variant::kTransductive); }
TEST(BatchGradient, InductiveMatchesFiniteDifferences) { check_gradient(Variant::kInductive); }

TEST(TrainEpoch, ZeroLearningRateChangesNothing) {
  const DatasetSplit s = taiw::testing::random_split(6, 12, 6, 1);
  for (Variant v : {Variant::kTransductive, Variant::kInductive}) {
    TaiwModel m = toy_model(v, s);
    m.config.trainer.learning_rate = 0.0;
    const TaiwModel before = m;
    const TrainingData data(s.train, 12);
    const auto ex = build_examples(s.train, v);
    TrainerState state(m, 3);
    train_epoch(m, data, ex, state);
    train_epoch(m, data, ex, state);
    EXPECT_EQ(m, before);
  }
}

TEST(TrainEpoch, OneUserTwoItemsConverges) {
  DatasetSplit s;
  s.num_items = 2;
  s.train.push_back(history(0, {{0, {0}}, {7, {0}}, {14, {0}}, {21, {0}}, {28, {0}}}));
  s.validation.push_back(make_basket(35, {0}));
  s.test.push_back(make_basket(42, {0}));
  ModelConfig cfg;
  cfg.variant = Variant::kTransductive;
  cfg.trainer.dim = 4;
  cfg.trainer.learning_rate = 0.05;
  cfg.trainer.l2_weight = 0.0;
  TaiwModel m = initialize_model(s, cfg, 1);
  const TrainingData data(s.train, 2);
  const auto ex = build_examples(s.train, cfg.variant);
  TrainerState state(m, 1);
  const double first = train_epoch(m, data, ex, state);
  double last = first;
  for (int e = 1; e < 200; ++e) last = train_epoch(m, data, ex, state);
  EXPECT_LT(first, std::log(2.0) + 0.01);
  EXPECT_LT(last, first);
  EXPECT_LT(last, 0.05);
  EXPECT_GT(intensity(0, 0, 35, s.train[0], m), intensity(0, 1, 35, s.train[0], m));
}

TEST(Fit, DeterministicForSeed) {
  const DatasetSplit s = taiw::testing::random_split(15, 12, 7, 2);
  ModelConfig cfg;
  cfg.variant = Variant::kTransductive;
  cfg.k_neighbors = 3;
  cfg.trainer.dim = 4;
  cfg.trainer.epochs = 4;
  cfg.trainer.batch_size = 16;
  const FitResult a = fit(s, cfg, 7);
  const FitResult b = fit(s, cfg, 7);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.best_val_ndcg10, b.best_val_ndcg10);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t e = 0; e < a.history.size(); ++e) EXPECT_EQ(a.history[e].mean_loss, b.history[e].mean_loss);
}

TEST(Fit, ZeroEpochsReturnsInitialModel) {
  const DatasetSplit s = taiw::testing::random_split(8, 12, 5, 3);
  ModelConfig cfg;
  cfg.k_neighbors = 3;
  cfg.trainer.epochs = 0;
  const FitResult r = fit(s, cfg, 5);
  EXPECT_EQ(r.model, initialize_model(s, cfg, 5));
  EXPECT_TRUE(r.history.empty());
  EXPECT_GE(r.best_val_ndcg10, 0.0);
}

TEST(Fit, PatienceZeroStopsAtFirstStall) {
  const DatasetSplit s = taiw::testing::random_split(20, 12, 6, 4);
  ModelConfig cfg;
  cfg.k_neighbors = 3;
  cfg.trainer.epochs = 30;
  cfg.trainer.patience = 0;
  cfg.trainer.learning_rate = 0.05;
  int calls = 0;
  const FitResult r = fit(s, cfg, 1, [&](const EpochLog&) { ++calls; });
  EXPECT_EQ(calls, static_cast<int>(r.history.size()));
  double best = -1.0;
  for (std::size_t e = 0; e < r.history.size(); ++e) {
    const bool improved = r.history[e].val_ndcg10 > best;
    if (e + 1 < r.history.size()) EXPECT_TRUE(improved) << "epoch " << e + 1;
    if (improved) best = r.history[e].val_ndcg10;
  }
  EXPECT_EQ(r.best_val_ndcg10, best);
}
