#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "taiw/neighborhood.hpp"
#include "test_util.hpp"

using namespace taiw;
using taiw::testing::history;

namespace {

NeighborIndex index_of(const std::vector<std::vector<double>>& rows) {
  std::vector<UserVector> v;
  for (const auto& r : rows) v.push_back(UserVector::dense(r));
  return NeighborIndex(std::move(v));
}

// Brute-force oracle: sort every candidate by (distance, id).
std::vector<UserId> brute_knn(const std::vector<double>& q, const std::vector<std::vector<double>>& rows,
                              std::size_t k, std::optional<UserId> exclude) {
  std::vector<std::pair<double, UserId>> d;
  for (UserId u = 0; u < rows.size(); ++u) {
    if (exclude && *exclude == u) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += (q[i] - rows[u][i]) * (q[i] - rows[u][i]);
    d.emplace_back(s, u);
  }
  std::sort(d.begin(), d.end());
  std::vector<UserId> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(d[i].second);
  return out;
}

}  // namespace

TEST(Knn, TwoDimensionalToy) {
  const auto idx = index_of({{1, 0}, {0, 2}, {5, 5}, {-3, 0}});
  const auto q = UserVector::dense({0.5, 0.5});
  EXPECT_EQ(knn(q, idx, 2, std::nullopt), (std::vector<UserId>{0, 1}));
  EXPECT_EQ(knn(q, idx, 4, std::nullopt), (std::vector<UserId>{0, 1, 3, 2}));
}

TEST(Knn, TiesGoToSmallestIds) {
  const auto idx = index_of({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  EXPECT_EQ(knn(UserVector::dense({0, 0}), idx, 2, std::nullopt), (std::vector<UserId>{0, 1}));
  EXPECT_EQ(knn(UserVector::dense({0, 0}), idx, 2, UserId{0}), (std::vector<UserId>{1, 2}));
}

TEST(Knn, ExcludesSelfAndChecksK) {
  const auto idx = index_of({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_EQ(knn(UserVector::dense({0, 0}), idx, 1, UserId{0}), (std::vector<UserId>{1}));
  EXPECT_NO_THROW(knn(UserVector::dense({0, 0}), idx, 2, UserId{0}));
  EXPECT_THROW(knn(UserVector::dense({0, 0}), idx, 3, UserId{0}), std::invalid_argument);
  EXPECT_THROW(knn(UserVector::dense({0, 0}), idx, 4, std::nullopt), std::invalid_argument);
}

TEST(Knn, MatchesBruteForce) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> v(-2, 2);  // small integer grid forces many ties
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::vector<double>> rows(30, std::vector<double>(4));
    for (auto& r : rows) for (double& x : r) x = v(rng);
    std::vector<double> q(4);
    for (double& x : q) x = v(rng);
    const auto idx = index_of(rows);
    const std::optional<UserId> ex = rep % 2 ? std::optional<UserId>(rep % 30) : std::nullopt;
    EXPECT_EQ(knn(UserVector::dense(q), idx, 7, ex), brute_knn(q, rows, 7, ex));
  }
}

TEST(Blend, ToyValues) {
  const auto idx = index_of({{1, 0}, {0, 2}});
  const std::vector<UserId> nb{0, 1};
  const auto own = UserVector::dense({0, 0});
  EXPECT_EQ(blend(own, idx, nb, 0.0), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(blend(own, idx, nb, 1.0), (std::vector<double>{0.0, 0.0}));
  EXPECT_THROW(blend(own, idx, nb, 1.5), std::invalid_argument);
}

TEST(Blend, EndpointsAndConvexity) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> v(0.0, 1.0);
  std::vector<std::vector<double>> rows(6, std::vector<double>(5));
  for (auto& r : rows) for (double& x : r) x = v(rng);
  const auto idx = index_of(rows);
  std::vector<double> q(5);
  for (double& x : q) x = v(rng);
  const auto own = UserVector::dense(q);
  EXPECT_EQ(blend(own, idx, knn(own, idx, 3, std::nullopt), 1.0), q);
  const auto nearest = knn(own, idx, 1, std::nullopt);
  EXPECT_EQ(blend(own, idx, nearest, 0.0), rows[nearest[0]]);

  const auto nb = knn(own, idx, 3, std::nullopt);
  const auto zero = blend(own, idx, nb, 0.0);
  for (double a : {0.1, 0.35, 0.8}) {
    const auto b = blend(own, idx, nb, a);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(b[i], a * q[i] + (1 - a) * zero[i], 1e-12);
  }
}

TEST(BuildIndex, RowsAreLastTrainingBasketVectors) {
  const DatasetSplit s = taiw::testing::random_split(5, 6, 6, 4);
  TaiwModel m;
  m.config.variant = Variant::kInductive;
  m.kernels = initialize_kernels(s.train, 6);
  const NeighborIndex idx = build_index(s.train, m);
  ASSERT_EQ(idx.size(), 5u);
  for (UserId u = 0; u < 5; ++u) {
    const UserVector r = user_vector(u, s.train[u].last_time(), s.train[u], m);
    EXPECT_EQ(idx.row(u), r);
    EXPECT_NEAR(idx.squared_norm(u), r.squared_norm(), 1e-15);
  }
}

TEST(BlendPrediction, NoNeighbourhoodIsOwnVector) {
  const DatasetSplit s = taiw::testing::random_split(5, 6, 6, 4);
  TaiwModel m;
  m.config.variant = Variant::kInductive;
  m.config.k_neighbors = 2;
  m.kernels = initialize_kernels(s.train, 6);
  const NeighborIndex idx = build_index(s.train, m);
  const UserHistory known = s.history_before_test(1);
  const auto own = user_vector(1, s.test[1].time, known, m).to_dense();
  EXPECT_EQ(blend_prediction(1, known, s.test[1].time, idx, m, false, 0.3, 2), own);
  EXPECT_EQ(blend_prediction(1, known, s.test[1].time, idx, m, true, 1.0, 2), own);
}
