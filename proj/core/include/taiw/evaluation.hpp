#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "taiw/baselines.hpp"
#include "taiw/data.hpp"
#include "taiw/model.hpp"
#include "taiw/neighborhood.hpp"

namespace taiw {

// Produces a score for every item. Implementations only ever see the baskets known before the
// target time and the target time itself, never the held-out basket.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  virtual std::vector<double> score(UserId user, const UserHistory& known, Timestamp target) const = 0;
};

class TaiwScorer final : public Scorer {
 public:
  // Uses the model's own neighbourhood settings. The neighbour index is built from `train`.
  TaiwScorer(TaiwModel model, std::span<const UserHistory> train);

  // Same model and index with different blending.
  TaiwScorer with_blend(bool use_neighborhood, double alpha) const;

  std::string name() const override;
  std::vector<double> score(UserId user, const UserHistory& known, Timestamp target) const override;

  const TaiwModel& model() const { return *model_; }
  bool use_neighborhood() const { return use_neighborhood_; }
  double alpha() const { return alpha_; }

 private:
  TaiwScorer() = default;

  std::shared_ptr<const TaiwModel> model_;
  std::shared_ptr<const NeighborIndex> index_;
  bool use_neighborhood_ = true;
  double alpha_ = 0.5;
};

class GpPopScorer final : public Scorer {
 public:
  GpPopScorer(std::span<const UserHistory> train, std::size_t num_items);
  explicit GpPopScorer(std::vector<double> global_counts) : global_(std::move(global_counts)) {}

  std::string name() const override { return "gp-pop"; }
  std::vector<double> score(UserId user, const UserHistory& known, Timestamp target) const override;

  const std::vector<double>& global_counts() const { return global_; }

 private:
  std::vector<double> global_;
};

class TifuKnnScorer final : public Scorer {
 public:
  TifuKnnScorer(std::span<const UserHistory> train, std::size_t num_items, TifuConfig cfg)
      : model_(train, num_items, cfg) {}

  std::string name() const override { return "tifu-knn"; }
  std::vector<double> score(UserId user, const UserHistory& known, Timestamp target) const override;

 private:
  TifuKnn model_;
};

enum class Stage {
  kValidation,  // known = training baskets, truth = validation basket
  kTest,        // known = training + validation baskets, truth = test basket
};

struct UserMetrics {
  UserId user = 0;
  // Parallel to EvalReport::ks.
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> ndcg;
};

struct EvalReport {
  std::string model;
  std::uint64_t seed = 0;
  std::string fingerprint;
  std::vector<std::size_t> ks;
  std::vector<UserMetrics> users;
  std::vector<double> mean_precision;
  std::vector<double> mean_recall;
  std::vector<double> mean_ndcg;

  std::size_t k_index(std::size_t k) const;
  double precision(std::size_t k) const { return mean_precision[k_index(k)]; }
  double recall(std::size_t k) const { return mean_recall[k_index(k)]; }
  double ndcg(std::size_t k) const { return mean_ndcg[k_index(k)]; }
};

// Users with an empty held-out basket are skipped. Means are taken in UserId order.
EvalReport evaluate(const Scorer& scorer, const DatasetSplit& split, Stage stage,
                    std::span<const std::size_t> ks);

struct MultiSeedReport {
  std::vector<EvalReport> per_seed;
  std::vector<std::size_t> ks;
  std::vector<double> mean_precision;
  std::vector<double> mean_recall;
  std::vector<double> mean_ndcg;
};

using ScorerFactory = std::function<std::unique_ptr<Scorer>(std::uint64_t seed)>;

// One evaluation per seed plus the mean of the per-seed aggregates.
MultiSeedReport evaluate_model(const ScorerFactory& factory, const DatasetSplit& split, Stage stage,
                               std::span<const std::size_t> ks, std::span<const std::uint64_t> seeds);

struct BucketMean {
  int bucket = 0;
  std::size_t users = 0;
  double ndcg = 0.0;
};

// Mean NDCG@k per bucket over the users present in `report`.
std::vector<BucketMean> gap_bucket_report(const EvalReport& report, std::span<const int> buckets,
                                          int n_buckets, std::size_t k = 10);

struct AlphaPoint {
  double alpha = 0.0;
  double ndcg10 = 0.0;
  double recall10 = 0.0;
};

// Re-evaluates `scorer` for each blend alpha, reusing its neighbour index.
std::vector<AlphaPoint> alpha_sweep(const TaiwScorer& scorer, const DatasetSplit& split,
                                    std::span<const double> alphas, Stage stage = Stage::kTest);

// model,seed,K,precision,recall,ndcg
void write_metrics_header(std::ostream& out);
void write_metrics_rows(std::ostream& out, const EvalReport& report);
// Rows with seed = "mean".
void write_metrics_mean_rows(std::ostream& out, const std::string& model, const MultiSeedReport& report);
// model,seed,bucket,users,ndcg10
void write_gap_bucket_header(std::ostream& out);
void write_gap_bucket_rows(std::ostream& out, const EvalReport& report, std::span<const BucketMean> buckets);
// alpha,ndcg10,recall10
void write_alpha_sweep_csv(std::ostream& out, std::span<const AlphaPoint> points);

}  // namespace taiw
