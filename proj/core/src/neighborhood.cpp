#include "taiw/neighborhood.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace taiw {

NeighborIndex::NeighborIndex(std::vector<UserVector> rows) : rows_(std::move(rows)) {
  norms_.reserve(rows_.size());
  for (const UserVector& r : rows_) {
    norms_.push_back(r.squared_norm());
  }
}

NeighborIndex build_index(std::span<const UserHistory> train, const TaiwModel& model) {
  std::vector<UserVector> rows;
  rows.reserve(train.size());
  for (const UserHistory& h : train) {
    rows.push_back(user_vector(h.user, h.last_time(), h, model));
  }
  return NeighborIndex(std::move(rows));
}

std::vector<UserId> knn(const UserVector& query, const NeighborIndex& index, std::size_t k,
                        std::optional<UserId> exclude) {
  std::vector<std::pair<double, UserId>> cand;
  cand.reserve(index.size());
  const double qn = query.squared_norm();
  for (UserId u = 0; u < index.size(); ++u) {
    if (exclude && *exclude == u) continue;
    cand.emplace_back(squared_distance(query, qn, index.row(u), index.squared_norm(u)), u);
  }
  if (k > cand.size()) {
    throw std::invalid_argument("knn: k=" + std::to_string(k) + " exceeds the " +
                                std::to_string(cand.size()) + " available neighbours");
  }
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
  std::vector<UserId> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) out.push_back(cand[r].second);
  return out;
}

std::vector<double> blend(const UserVector& own, const NeighborIndex& index,
                          std::span<const UserId> neighbors, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("blend alpha must lie in [0, 1]");
  }
  std::vector<double> mean(own.dim(), 0.0);
  for (UserId n : neighbors) {
    index.row(n).add_scaled_to(mean, 1.0);
  }
  const double inv_k = neighbors.empty() ? 0.0 : 1.0 / static_cast<double>(neighbors.size());
  std::vector<double> out = own.to_dense();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = alpha * out[i] + (1.0 - alpha) * (mean[i] * inv_k);
  }
  return out;
}

std::vector<double> blend_prediction(UserId user, const UserHistory& known, Timestamp target,
                                     const NeighborIndex& index, const TaiwModel& model) {
  const ModelConfig& c = model.config;
  return blend_prediction(user, known, target, index, model, c.use_neighborhood, c.blend_alpha,
                          c.k_neighbors);
}

std::vector<double> blend_prediction(UserId user, const UserHistory& known, Timestamp target,
                                     const NeighborIndex& index, const TaiwModel& model,
                                     bool use_neighborhood, double alpha, std::size_t k) {
  const UserVector own = user_vector(user, target, known, model);
  if (!use_neighborhood) {
    return own.to_dense();
  }
  const std::optional<UserId> self =
      user < index.size() ? std::optional<UserId>(user) : std::nullopt;
  const auto neighbors = knn(own, index, k, self);
  return blend(own, index, neighbors, alpha);
}

}  // namespace taiw
