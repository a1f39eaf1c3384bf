#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "taiw/data.hpp"
#include "taiw/model.hpp"
#include "taiw/optimizer.hpp"

namespace taiw {

// One positive (user, basket, item) term of the pairwise loss. The history prefix is every
// training basket strictly before `time`.
struct TrainExample {
  UserId user = 0;
  std::uint32_t basket = 0;
  ItemId positive = 0;
  Timestamp time = 0.0;

  friend bool operator==(const TrainExample&, const TrainExample&) = default;
};

// Every (basket, item) of every training history. The inductive variant skips each user's
// first basket, whose empty prefix scores every item zero.
std::vector<TrainExample> build_examples(std::span<const UserHistory> train, Variant variant);

// Per-user purchase indices over the training histories.
class TrainingData {
 public:
  TrainingData(std::span<const UserHistory> train, std::size_t num_items);

  std::size_t num_users() const { return purchases_.size(); }
  std::size_t num_items() const { return num_items_; }
  const PurchaseIndex& purchases(UserId u) const { return purchases_.at(u); }
  // Items the user bought anywhere in training, sorted.
  std::span<const ItemId> consumed(UserId u) const { return purchases_.at(u).items(); }

 private:
  std::size_t num_items_;
  std::vector<PurchaseIndex> purchases_;
};

// Uniform draw from the items not in `consumed` (sorted). One RNG draw per call.
// Throws std::runtime_error if the user consumed every item.
ItemId sample_negative(std::span<const ItemId> consumed, std::size_t num_items, std::mt19937_64& rng);
ItemId sample_negative(const UserHistory& history, std::size_t num_items, std::mt19937_64& rng);

struct PairLoss {
  double loss = 0.0;     // -ln logistic(pos - neg)
  double dmargin = 0.0;  // d loss / d (pos - neg)
};

PairLoss bpr_pair_loss(double pos, double neg);

// Sum of pair losses over `examples` (with `negatives[k]` paired to `examples[k]`) plus, for the
// transductive variant, l2_weight * squared norm of each embedding row and bias touched by the
// batch (each counted once). When `grad` is non-null the analytic gradient is added to it.
double batch_loss_and_gradient(const TaiwModel& model, const ParameterLayout& layout,
                               const TrainingData& data, std::span<const TrainExample> examples,
                               std::span<const ItemId> negatives, SparseGradient* grad);

struct TrainerState {
  TrainerState(const TaiwModel& model, std::uint64_t seed);

  ParameterLayout layout;
  Adam optimizer;
  SparseGradient gradient;
  std::mt19937_64 rng;
  int epoch = 0;
  double best_val_ndcg = -std::numeric_limits<double>::infinity();
  std::optional<TaiwModel> best;
  int stale_epochs = 0;
};

// One shuffled pass over `examples` in mini-batches with fresh negatives. Returns the mean
// per-example loss. Throws std::runtime_error on a non-finite batch loss.
double train_epoch(TaiwModel& model, const TrainingData& data, std::span<const TrainExample> examples,
                   TrainerState& state);

struct EpochLog {
  int epoch = 0;
  double mean_loss = 0.0;
  double val_ndcg10 = 0.0;
};

struct FitResult {
  TaiwModel model;  // best validation snapshot
  double best_val_ndcg10 = 0.0;
  std::vector<EpochLog> history;
};

using EpochCallback = std::function<void(const EpochLog&)>;

// Trains for up to cfg.trainer.epochs epochs, scoring validation NDCG@10 after each and keeping
// the best snapshot; stops once more than `patience` consecutive epochs fail to improve.
// Deterministic for a given seed.
FitResult fit(const DatasetSplit& split, const ModelConfig& cfg, std::uint64_t seed,
              const EpochCallback& on_epoch = {});

}  // namespace taiw
