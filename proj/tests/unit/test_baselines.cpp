#include <cmath>

#include <gtest/gtest.h>

#include "taiw/baselines.hpp"
#include "test_util.hpp"

using namespace taiw;
using taiw::testing::history;

TEST(GlobalCounts, BasketsContainingItem) {
  const std::vector<UserHistory> train{history(0, {{0, {0, 1}}, {1, {0}}}), history(1, {{0, {2}}, {4, {0, 2}}})};
  EXPECT_EQ(global_counts(train, 4), (std::vector<double>{3, 1, 2, 0}));
}

TEST(GpPop, PersonalCountsFirst) {
  // A (item 0) bought three times, B (item 1) once but globally far more popular.
  const UserHistory h = history(0, {{0, {0}}, {1, {0, 1}}, {2, {0}}});
  const std::vector<double> global{3, 100, 50};
  const auto s = gp_pop_scores(h, global);
  EXPECT_GT(s[0], s[1]);
  EXPECT_GT(s[1], s[2]);  // bought beats unbought regardless of popularity
}

TEST(GpPop, EmptyHistoryFallsBackToPopularity) {
  const UserHistory h;
  const auto s = gp_pop_scores(h, std::vector<double>{5, 9, 1});
  EXPECT_GT(s[1], s[0]);
  EXPECT_GT(s[0], s[2]);
}

TEST(GpPop, EqualPersonalCountsBrokenByPopularity) {
  const UserHistory h = history(0, {{0, {0, 1}}, {1, {0, 1}}});
  const auto s = gp_pop_scores(h, std::vector<double>{4, 7, 0});
  EXPECT_GT(s[1], s[0]);
  EXPECT_NEAR(s[1], 2.0 + 7.0 / 8.0, 1e-15);
}

TEST(Pif, UnitDecaysSingleGroupAreCounts) {
  TifuConfig cfg;
  cfg.group_count = 1;
  cfg.within_group_decay = 1.0;
  cfg.group_decay = 1.0;
  const UserHistory h = history(0, {{0, {0, 2}}, {1, {0}}, {2, {0, 3}}});
  EXPECT_EQ(pif_vector(h, 4, cfg).to_dense(), (std::vector<double>{3, 0, 1, 1}));
}

TEST(Pif, SingleBasketIsIndicator) {
  const UserHistory h = history(0, {{0, {1, 2}}});
  EXPECT_EQ(pif_vector(h, 3, TifuConfig{}).to_dense(), (std::vector<double>{0, 1, 1}));
}

TEST(Pif, GroupsMatchStraightLineOracle) {
  TifuConfig cfg;
  cfg.group_count = 2;
  cfg.within_group_decay = 0.9;
  cfg.group_decay = 0.7;
  const double wd = 0.9, gd = 0.7;
  // Four baskets, two groups of two.
  const UserHistory h4 = history(0, {{0, {0}}, {1, {1}}, {2, {2}}, {3, {3}}});
  const std::vector<double> want4{gd * wd / 2, gd / 2, wd / 2, 1.0 / 2};
  const auto got4 = pif_vector(h4, 4, cfg).to_dense();
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(got4[i], want4[i], 1e-15) << i;
  // Five baskets: the first group takes the extra basket.
  const UserHistory h5 = history(0, {{0, {0}}, {1, {0}}, {2, {1}}, {3, {2}}, {4, {2}}});
  const std::vector<double> want5{gd * (wd * wd + wd) / 2, gd / 2, (wd + 1.0) / 2};
  const auto got5 = pif_vector(h5, 3, cfg).to_dense();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(got5[i], want5[i], 1e-15) << i;
}

TEST(Pif, MoreGroupsThanBaskets) {
  TifuConfig cfg;
  cfg.group_count = 7;
  cfg.group_decay = 0.5;
  const UserHistory h = history(0, {{0, {0}}, {1, {1}}});
  // m = 2, one basket per group.
  const auto v = pif_vector(h, 2, cfg).to_dense();
  EXPECT_NEAR(v[0], 0.25, 1e-15);
  EXPECT_NEAR(v[1], 0.5, 1e-15);
}

TEST(TifuKnn, OwnVectorAtAlphaOneOrdersLikeGpPop) {
  const DatasetSplit s = taiw::testing::random_split(6, 8, 8, 12);
  TifuConfig cfg;
  cfg.k_neighbors = 3;
  cfg.group_count = 1;
  cfg.within_group_decay = 1.0;
  cfg.group_decay = 1.0;
  cfg.blend_alpha = 1.0;
  const TifuKnn model(s.train, 8, cfg);
  const auto global = global_counts(s.train, 8);
  for (UserId u = 0; u < 6; ++u) {
    const auto tifu = model.scores(u, s.train[u]);
    const auto gp = gp_pop_scores(s.train[u], global);
    for (ItemId a = 0; a < 8; ++a) {
      for (ItemId b = 0; b < 8; ++b) {
        if (tifu[a] > tifu[b]) EXPECT_GT(gp[a], gp[b]) << u << " " << a << " " << b;
      }
    }
  }
}

TEST(TifuConfig, Validation) {
  KeyValueConfig cfg;
  cfg.set("group_decay", "0");
  EXPECT_THROW(TifuConfig::from_config(cfg), ConfigError);
  cfg.set("group_decay", "0.5");
  cfg.set("k_neighbors", "0");
  EXPECT_THROW(TifuConfig::from_config(cfg), ConfigError);
}
