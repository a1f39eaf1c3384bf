#include "taiw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace taiw {
namespace {

void check(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k) {
  if (truth.empty()) {
    throw std::invalid_argument("ranking metric with empty ground truth");
  }
  if (topk.size() != k || k == 0) {
    throw std::invalid_argument("ranking metric expects exactly k > 0 recommended items");
  }
}

}  // namespace

std::vector<ItemId> rank_items(std::span<const double> scores, std::size_t k) {
  if (k > scores.size()) {
    throw std::invalid_argument("rank_items: k=" + std::to_string(k) + " exceeds " +
                                std::to_string(scores.size()) + " items");
  }
  std::vector<ItemId> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](ItemId a, ItemId b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  order.resize(k);
  return order;
}

std::size_t count_hits(std::span<const ItemId> topk, std::span<const ItemId> truth) {
  std::size_t hits = 0;
  for (ItemId i : topk) {
    if (std::binary_search(truth.begin(), truth.end(), i)) ++hits;
  }
  return hits;
}

double precision_at_k(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k) {
  check(topk, truth, k);
  return static_cast<double>(count_hits(topk, truth)) / static_cast<double>(k);
}

double recall_at_k(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k) {
  check(topk, truth, k);
  return static_cast<double>(count_hits(topk, truth)) / static_cast<double>(truth.size());
}

double ndcg_at_k(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k) {
  check(topk, truth, k);
  double dcg = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    if (std::binary_search(truth.begin(), truth.end(), topk[r])) {
      dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    }
  }
  double idcg = 0.0;
  const std::size_t ideal = std::min(k, truth.size());
  for (std::size_t r = 0; r < ideal; ++r) {
    idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
  }
  return dcg / idcg;
}

}  // namespace taiw
