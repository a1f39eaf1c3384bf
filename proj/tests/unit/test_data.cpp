#include <gtest/gtest.h>

#include "taiw/data.hpp"
#include "test_util.hpp"

using namespace taiw;
using taiw::testing::history;

TEST(Vocabulary, EncodeDecodeRoundTrip) {
  Vocabulary v;
  const std::vector<std::string> raw{"milk", "bread", "milk", "eggs"};
  std::vector<std::uint32_t> ids;
  for (const auto& r : raw) ids.push_back(v.encode(r));
  EXPECT_EQ(ids, (std::vector<std::uint32_t>{0, 1, 0, 2}));
  EXPECT_EQ(v.size(), 3u);
  for (std::uint32_t k = 0; k < v.size(); ++k) EXPECT_EQ(v.encode(v.decode(k)), k);
  EXPECT_EQ(v.find("bread"), 1u);
  EXPECT_FALSE(v.find("tea").has_value());
  EXPECT_THROW(v.decode(3), std::out_of_range);
}

TEST(Basket, SortsAndDeduplicates) {
  const Basket b = make_basket(2.0, {5, 1, 5, 3});
  EXPECT_EQ(b.items, (std::vector<ItemId>{1, 3, 5}));
  EXPECT_TRUE(b.contains(3));
  EXPECT_FALSE(b.contains(2));
  EXPECT_THROW(make_basket(1.0, {}), DataError);
  EXPECT_THROW(make_basket(std::nan(""), {1}), DataError);
}

TEST(UserHistory, ValidateRejectsNonIncreasingTimes) {
  EXPECT_NO_THROW(validate_history(history(0, {{1, {0}}, {2, {1}}})));
  EXPECT_THROW(validate_history(history(0, {{2, {0}}, {2, {1}}})), DataError);
  EXPECT_THROW(validate_history(history(0, {{3, {0}}, {2, {1}}})), DataError);
}

TEST(HistoryItems, Union) {
  EXPECT_EQ(history_items(history(0, {{1, {0}}, {2, {0, 1}}})), (std::vector<ItemId>{0, 1}));
  EXPECT_TRUE(history_items(UserHistory{}).empty());
  EXPECT_EQ(history_items(history(0, {{1, {0}}, {2, {0}}, {3, {0}}})), (std::vector<ItemId>{0}));
}

TEST(PurchasesOf, StrictlyBefore) {
  const UserHistory h = history(0, {{1, {0}}, {3, {0, 1}}, {7, {0}}});
  EXPECT_EQ(purchases_of(h, 0, 5), (std::vector<Timestamp>{1, 3}));
  EXPECT_TRUE(purchases_of(h, 2, 5).empty());
  EXPECT_EQ(purchases_of(h, 0, 3), (std::vector<Timestamp>{1}));
}

TEST(PurchaseIndex, MatchesPurchasesOf) {
  const UserHistory h = history(0, {{1, {0, 2}}, {3, {0, 1}}, {7, {0}}, {9, {2}}});
  const PurchaseIndex idx(h);
  EXPECT_EQ(std::vector<ItemId>(idx.items().begin(), idx.items().end()), history_items(h));
  for (ItemId i = 0; i < 4; ++i) {
    for (double t : {0.0, 1.0, 2.0, 3.0, 7.5, 100.0}) {
      const auto got = idx.before(i, t);
      EXPECT_EQ(std::vector<Timestamp>(got.begin(), got.end()), purchases_of(h, i, t)) << i << " " << t;
    }
  }
  EXPECT_EQ(idx.all(0).size(), 3u);
}

TEST(DatasetSplit, HistoryBeforeTestAppendsValidation) {
  const auto split = taiw::testing::split_of({history(0, {{1, {0}}, {2, {1}}, {3, {2}}})}, 3);
  const UserHistory h = split.history_before_test(0);
  ASSERT_EQ(h.baskets.size(), 2u);
  EXPECT_EQ(h.baskets[1], split.validation[0]);
}

TEST(DatasetSplit, ShiftMovesEveryTimestamp) {
  const auto split = taiw::testing::random_split(4, 5, 6, 1);
  const auto shifted = shift_timestamps(split, 1000.0);
  for (UserId u = 0; u < split.num_users(); ++u) {
    for (std::size_t j = 0; j < split.train[u].baskets.size(); ++j) {
      EXPECT_EQ(shifted.train[u].baskets[j].time, split.train[u].baskets[j].time + 1000.0);
      EXPECT_EQ(shifted.train[u].baskets[j].items, split.train[u].baskets[j].items);
    }
    EXPECT_EQ(shifted.validation[u].time, split.validation[u].time + 1000.0);
    EXPECT_EQ(shifted.test[u].time, split.test[u].time + 1000.0);
  }
}
