#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "taiw/data.hpp"

namespace taiw {

// Top-k items by descending score, ties broken by ascending ItemId.
// Throws std::invalid_argument when k exceeds the number of items.
std::vector<ItemId> rank_items(std::span<const double> scores, std::size_t k);

// `truth` must be sorted (as in Basket::items) and non-empty; `topk` has k entries.
std::size_t count_hits(std::span<const ItemId> topk, std::span<const ItemId> truth);
double precision_at_k(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k);
double recall_at_k(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k);
// Binary relevance; the ideal ranking is truncated at min(k, |truth|).
double ndcg_at_k(std::span<const ItemId> topk, std::span<const ItemId> truth, std::size_t k);

}  // namespace taiw
