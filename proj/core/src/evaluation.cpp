#include "taiw/evaluation.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "taiw/config.hpp"
#include "taiw/metrics.hpp"

namespace taiw {

TaiwScorer::TaiwScorer(TaiwModel model, std::span<const UserHistory> train)
    : use_neighborhood_(model.config.use_neighborhood), alpha_(model.config.blend_alpha) {
  model_ = std::make_shared<const TaiwModel>(std::move(model));
  index_ = std::make_shared<const NeighborIndex>(build_index(train, *model_));
}

TaiwScorer TaiwScorer::with_blend(bool use_neighborhood, double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("blend alpha must lie in [0, 1]");
  }
  TaiwScorer s;
  s.model_ = model_;
  s.index_ = index_;
  s.use_neighborhood_ = use_neighborhood;
  s.alpha_ = alpha;
  return s;
}

std::string TaiwScorer::name() const {
  const std::string base = to_string(model_->config.variant);
  return use_neighborhood_ ? base : base + "-no-nbr";
}

std::vector<double> TaiwScorer::score(UserId user, const UserHistory& known, Timestamp target) const {
  return blend_prediction(user, known, target, *index_, *model_, use_neighborhood_, alpha_,
                          model_->config.k_neighbors);
}

GpPopScorer::GpPopScorer(std::span<const UserHistory> train, std::size_t num_items)
    : global_(taiw::global_counts(train, num_items)) {}

std::vector<double> GpPopScorer::score(UserId, const UserHistory& known, Timestamp) const {
  return gp_pop_scores(known, global_);
}

std::vector<double> TifuKnnScorer::score(UserId user, const UserHistory& known, Timestamp) const {
  return model_.scores(user, known);
}

std::size_t EvalReport::k_index(std::size_t k) const {
  auto it = std::find(ks.begin(), ks.end(), k);
  if (it == ks.end()) {
    throw std::out_of_range("K=" + std::to_string(k) + " was not evaluated");
  }
  return static_cast<std::size_t>(it - ks.begin());
}

EvalReport evaluate(const Scorer& scorer, const DatasetSplit& split, Stage stage,
                    std::span<const std::size_t> ks) {
  if (ks.empty()) {
    throw std::invalid_argument("evaluate: empty K list");
  }
  const std::size_t max_k = *std::max_element(ks.begin(), ks.end());
  EvalReport report;
  report.model = scorer.name();
  report.ks.assign(ks.begin(), ks.end());
  const std::size_t nk = ks.size();
  report.mean_precision.assign(nk, 0.0);
  report.mean_recall.assign(nk, 0.0);
  report.mean_ndcg.assign(nk, 0.0);

  for (UserId u = 0; u < split.num_users(); ++u) {
    const Basket& truth = stage == Stage::kValidation ? split.validation[u] : split.test[u];
    if (truth.items.empty()) continue;
    const UserHistory known = stage == Stage::kValidation ? split.train[u] : split.history_before_test(u);
    const auto scores = scorer.score(u, known, truth.time);
    const auto ranked = rank_items(scores, max_k);

    UserMetrics m;
    m.user = u;
    for (std::size_t k : ks) {
      const std::span<const ItemId> topk(ranked.data(), k);
      m.precision.push_back(precision_at_k(topk, truth.items, k));
      m.recall.push_back(recall_at_k(topk, truth.items, k));
      m.ndcg.push_back(ndcg_at_k(topk, truth.items, k));
    }
    report.users.push_back(std::move(m));
  }

  for (const UserMetrics& m : report.users) {
    for (std::size_t j = 0; j < nk; ++j) {
      report.mean_precision[j] += m.precision[j];
      report.mean_recall[j] += m.recall[j];
      report.mean_ndcg[j] += m.ndcg[j];
    }
  }
  if (!report.users.empty()) {
    const double inv = 1.0 / static_cast<double>(report.users.size());
    for (std::size_t j = 0; j < nk; ++j) {
      report.mean_precision[j] *= inv;
      report.mean_recall[j] *= inv;
      report.mean_ndcg[j] *= inv;
    }
  }
  return report;
}

MultiSeedReport evaluate_model(const ScorerFactory& factory, const DatasetSplit& split, Stage stage,
                               std::span<const std::size_t> ks, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) {
    throw std::invalid_argument("evaluate_model: no seeds");
  }
  MultiSeedReport out;
  out.ks.assign(ks.begin(), ks.end());
  out.mean_precision.assign(ks.size(), 0.0);
  out.mean_recall.assign(ks.size(), 0.0);
  out.mean_ndcg.assign(ks.size(), 0.0);
  for (std::uint64_t seed : seeds) {
    auto scorer = factory(seed);
    EvalReport r = evaluate(*scorer, split, stage, ks);
    r.seed = seed;
    for (std::size_t j = 0; j < ks.size(); ++j) {
      out.mean_precision[j] += r.mean_precision[j];
      out.mean_recall[j] += r.mean_recall[j];
      out.mean_ndcg[j] += r.mean_ndcg[j];
    }
    out.per_seed.push_back(std::move(r));
  }
  const double inv = 1.0 / static_cast<double>(seeds.size());
  for (std::size_t j = 0; j < ks.size(); ++j) {
    out.mean_precision[j] *= inv;
    out.mean_recall[j] *= inv;
    out.mean_ndcg[j] *= inv;
  }
  return out;
}

std::vector<BucketMean> gap_bucket_report(const EvalReport& report, std::span<const int> buckets,
                                          int n_buckets, std::size_t k) {
  const std::size_t j = report.k_index(k);
  std::vector<BucketMean> out(static_cast<std::size_t>(n_buckets));
  std::vector<double> sums(out.size(), 0.0);
  for (int b = 0; b < n_buckets; ++b) out[static_cast<std::size_t>(b)].bucket = b;
  for (const UserMetrics& m : report.users) {
    const int b = buckets[m.user];
    if (b < 0 || b >= n_buckets) {
      throw std::out_of_range("gap bucket index out of range");
    }
    sums[static_cast<std::size_t>(b)] += m.ndcg[j];
    ++out[static_cast<std::size_t>(b)].users;
  }
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b].ndcg = out[b].users ? sums[b] / static_cast<double>(out[b].users) : 0.0;
  }
  return out;
}

std::vector<AlphaPoint> alpha_sweep(const TaiwScorer& scorer, const DatasetSplit& split,
                                    std::span<const double> alphas, Stage stage) {
  const std::size_t ks[] = {10};
  std::vector<AlphaPoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    const TaiwScorer s = scorer.with_blend(true, alpha);
    const EvalReport r = evaluate(s, split, stage, ks);
    out.push_back({alpha, r.ndcg(10), r.recall(10)});
  }
  return out;
}

void write_metrics_header(std::ostream& out) { out << "model,seed,K,precision,recall,ndcg\n"; }

void write_metrics_rows(std::ostream& out, const EvalReport& report) {
  for (std::size_t j = 0; j < report.ks.size(); ++j) {
    out << report.model << ',' << report.seed << ',' << report.ks[j] << ','
        << format_double(report.mean_precision[j]) << ',' << format_double(report.mean_recall[j])
        << ',' << format_double(report.mean_ndcg[j]) << '\n';
  }
}

void write_metrics_mean_rows(std::ostream& out, const std::string& model, const MultiSeedReport& report) {
  for (std::size_t j = 0; j < report.ks.size(); ++j) {
    out << model << ",mean," << report.ks[j] << ',' << format_double(report.mean_precision[j]) << ','
        << format_double(report.mean_recall[j]) << ',' << format_double(report.mean_ndcg[j]) << '\n';
  }
}

void write_gap_bucket_header(std::ostream& out) { out << "model,seed,bucket,users,ndcg10\n"; }

void write_gap_bucket_rows(std::ostream& out, const EvalReport& report, std::span<const BucketMean> buckets) {
  for (const BucketMean& b : buckets) {
    out << report.model << ',' << report.seed << ',' << b.bucket + 1 << ',' << b.users << ','
        << format_double(b.ndcg) << '\n';
  }
}

void write_alpha_sweep_csv(std::ostream& out, std::span<const AlphaPoint> points) {
  out << "alpha,ndcg10,recall10\n";
  for (const AlphaPoint& p : points) {
    out << format_double(p.alpha) << ',' << format_double(p.ndcg10) << ',' << format_double(p.recall10)
        << '\n';
  }
}

}  // namespace taiw
