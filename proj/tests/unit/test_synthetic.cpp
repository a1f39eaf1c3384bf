#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "taiw/synthetic.hpp"

using namespace taiw;

TEST(Synthetic, RejectsEmptyShapes) {
  SyntheticConfig c;
  c.num_users = 0;
  EXPECT_THROW(generate_synthetic(c, 1), ConfigError);
  c = SyntheticConfig{};
  c.num_items = 0;
  EXPECT_THROW(generate_synthetic(c, 1), ConfigError);
  c = SyntheticConfig{};
  c.max_items_per_user = c.num_items + 1;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Synthetic, SeededAndValid) {
  SyntheticConfig c;
  c.num_users = 60;
  const SyntheticData a = generate_synthetic(c, 5);
  const SyntheticData b = generate_synthetic(c, 5);
  const SyntheticData d = generate_synthetic(c, 6);
  EXPECT_EQ(a.log.histories, b.log.histories);
  EXPECT_NE(a.log.histories, d.log.histories);
  ASSERT_EQ(a.log.num_users(), 60u);
  EXPECT_EQ(a.patterns.size(), 50u);
  for (const UserHistory& h : a.log.histories) {
    EXPECT_GE(h.baskets.size(), 3u);
    EXPECT_NO_THROW(validate_history(h));
    for (const Basket& bk : h.baskets) EXPECT_EQ(bk.time, std::floor(bk.time));
  }
  std::size_t periodic = 0;
  for (const PlantedPattern& p : a.patterns) periodic += p.periodic;
  EXPECT_EQ(periodic, 25u);
}

TEST(Synthetic, PeriodicGapModeNearPlantedMean) {
  SyntheticConfig c;
  c.num_users = 200;
  c.num_items = 10;
  c.periodic_fraction = 1.0;
  c.periodic_means = {7.0};
  c.noise_prob = 0.0;
  c.min_items_per_user = 1;
  c.max_items_per_user = 2;
  const SyntheticData data = generate_synthetic(c, 11);
  std::map<long, int> hist;
  for (const UserHistory& h : data.log.histories) {
    const PurchaseIndex idx(h);
    for (ItemId i : idx.items()) {
      const auto t = idx.all(i);
      for (std::size_t k = 1; k < t.size(); ++k) ++hist[std::lround(t[k] - t[k - 1])];
    }
  }
  long mode = 0;
  int best = 0;
  for (const auto& [gap, n] : hist) {
    if (n > best) {
      best = n;
      mode = gap;
    }
  }
  EXPECT_NEAR(static_cast<double>(mode), 7.0, 1.0);
}

TEST(Synthetic, ConfigRoundTripAndPatternsCsv) {
  SyntheticConfig c;
  c.periodic_means = {3.5, 14};
  c.churn_days = 60;
  const SyntheticConfig back = SyntheticConfig::from_config(c.to_config());
  EXPECT_EQ(back.periodic_means, c.periodic_means);
  EXPECT_EQ(back.churn_days, 60.0);
  KeyValueConfig bad;
  bad.set("periodic_means", "7 x");
  EXPECT_THROW(SyntheticConfig::from_config(bad), ConfigError);

  c.num_users = 20;
  std::ostringstream out;
  write_patterns_csv(out, generate_synthetic(c, 2));
  EXPECT_EQ(out.str().rfind("item,kind,mean_gap,sigma\ni0,", 0), 0u);
}
