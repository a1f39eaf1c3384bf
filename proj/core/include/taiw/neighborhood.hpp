#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "taiw/data.hpp"
#include "taiw/model.hpp"
#include "taiw/user_vector.hpp"

namespace taiw {

// One representation per training user, row order = UserId. Squared norms are cached
// for the expanded distance formula.
class NeighborIndex {
 public:
  NeighborIndex() = default;
  explicit NeighborIndex(std::vector<UserVector> rows);

  std::size_t size() const { return rows_.size(); }
  const UserVector& row(UserId u) const { return rows_.at(u); }
  double squared_norm(UserId u) const { return norms_.at(u); }

 private:
  std::vector<UserVector> rows_;
  std::vector<double> norms_;
};

// Row u = user_vector(u, time of u's last training basket). Reads training data only.
NeighborIndex build_index(std::span<const UserHistory> train, const TaiwModel& model);

// The k rows closest to `query` in Euclidean distance, ties broken by ascending UserId.
// `exclude` (normally the querying user) is never returned. Throws std::invalid_argument
// when fewer than k candidates remain.
std::vector<UserId> knn(const UserVector& query, const NeighborIndex& index, std::size_t k,
                        std::optional<UserId> exclude);

// alpha * own + (1 - alpha) * mean of the neighbor rows.
std::vector<double> blend(const UserVector& own, const NeighborIndex& index,
                          std::span<const UserId> neighbors, double alpha);

// Final prediction P_u for `user` at `target`: the user's own vector is computed at the target
// time from `known`, neighbours come from the index. With use_neighborhood=false this is the
// user's own vector, densified.
std::vector<double> blend_prediction(UserId user, const UserHistory& known, Timestamp target,
                                     const NeighborIndex& index, const TaiwModel& model);
std::vector<double> blend_prediction(UserId user, const UserHistory& known, Timestamp target,
                                     const NeighborIndex& index, const TaiwModel& model,
                                     bool use_neighborhood, double alpha, std::size_t k);

}  // namespace taiw
