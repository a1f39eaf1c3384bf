#include "taiw/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "taiw/evaluation.hpp"

namespace taiw {
namespace {

// Kernel sum of one item at time t and its gradient w.r.t. the constrained shape parameters.
struct KernelTerm {
  double sum = 0.0;
  KernelGradient grad{};
};

KernelTerm kernel_term(ItemId item, Timestamp t, std::span<const Timestamp> times,
                       const KernelParams& params, bool with_grad) {
  KernelTerm term;
  if (times.empty()) {
    return term;
  }
  const ItemKernel k = params.constrained(item);
  for (Timestamp tj : times) {
    const double dt = t - tj;
    term.sum += k(dt);
    if (with_grad) {
      const KernelGradient g = gamma_grad_constrained(k, dt);
      for (std::size_t p = 0; p < kNumKernelParams; ++p) term.grad[p] += g[p];
    }
  }
  return term;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

struct ItemScore {
  double lambda = 0.0;
  KernelTerm term;
  double alpha = 1.0;
};

ItemScore score_item(const TaiwModel& model, const TrainingData& data, UserId u, ItemId item,
                     Timestamp t, bool with_grad) {
  ItemScore s;
  const auto times = data.purchases(u).before(item, t);
  s.term = kernel_term(item, t, times, model.kernels, with_grad);
  if (model.config.variant == Variant::kInductive) {
    s.lambda = s.term.sum;
    return s;
  }
  s.alpha = softplus(model.kernels.raw(item, kRawExcite));
  s.lambda = dot(model.base->user_row(u), model.base->item_row(item)) + model.base->bias(item) +
             s.alpha * s.term.sum;
  return s;
}

// Adds weight * d lambda_{u,item}(t) / d theta to `grad`.
void add_item_gradient(const TaiwModel& model, const ParameterLayout& layout, UserId u, ItemId item,
                       const ItemScore& s, double weight, SparseGradient& grad) {
  const bool transductive = model.config.variant == Variant::kTransductive;
  if (!model.config.trainer.freeze_kernel && s.term.sum != 0.0) {
    const KernelGradient chain = reparam_derivatives(item, model.kernels);
    const double scale = transductive ? weight * s.alpha : weight;
    for (std::size_t p = 0; p < kRawExcite; ++p) {
      grad.add(layout.kernel(item, static_cast<KernelParam>(p)), scale * s.term.grad[p] * chain[p]);
    }
    if (transductive) {
      grad.add(layout.kernel(item, kRawExcite), weight * s.term.sum * chain[kRawExcite]);
    }
  }
  if (transductive) {
    const auto user_row = model.base->user_row(u);
    const auto item_row = model.base->item_row(item);
    for (std::size_t k = 0; k < user_row.size(); ++k) {
      grad.add(layout.user_embedding(u, k), weight * item_row[k]);
      grad.add(layout.item_embedding(item, k), weight * user_row[k]);
    }
    grad.add(layout.bias(item), weight);
  }
}

}  // namespace

std::vector<TrainExample> build_examples(std::span<const UserHistory> train, Variant variant) {
  std::vector<TrainExample> out;
  for (const UserHistory& h : train) {
    const std::uint32_t first = variant == Variant::kInductive ? 1 : 0;
    for (std::uint32_t j = first; j < h.baskets.size(); ++j) {
      for (ItemId i : h.baskets[j].items) {
        out.push_back({h.user, j, i, h.baskets[j].time});
      }
    }
  }
  return out;
}

TrainingData::TrainingData(std::span<const UserHistory> train, std::size_t num_items)
    : num_items_(num_items) {
  purchases_.reserve(train.size());
  for (const UserHistory& h : train) {
    purchases_.emplace_back(h);
  }
}

ItemId sample_negative(std::span<const ItemId> consumed, std::size_t num_items, std::mt19937_64& rng) {
  if (consumed.size() >= num_items) {
    throw std::runtime_error("sample_negative: user has consumed every item");
  }
  std::uniform_int_distribution<std::size_t> dist(0, num_items - consumed.size() - 1);
  // The r-th item not in `consumed`.
  std::size_t item = dist(rng);
  for (ItemId c : consumed) {
    if (c <= item) {
      ++item;
    } else {
      break;
    }
  }
  return static_cast<ItemId>(item);
}

ItemId sample_negative(const UserHistory& history, std::size_t num_items, std::mt19937_64& rng) {
  const auto consumed = history_items(history);
  return sample_negative(consumed, num_items, rng);
}

PairLoss bpr_pair_loss(double pos, double neg) {
  const double margin = pos - neg;
  return PairLoss{softplus(-margin), -logistic(-margin)};
}

double batch_loss_and_gradient(const TaiwModel& model, const ParameterLayout& layout,
                               const TrainingData& data, std::span<const TrainExample> examples,
                               std::span<const ItemId> negatives, SparseGradient* grad) {
  if (examples.size() != negatives.size()) {
    throw std::invalid_argument("one negative per example is required");
  }
  const bool with_grad = grad != nullptr;
  double loss = 0.0;
  for (std::size_t k = 0; k < examples.size(); ++k) {
    const TrainExample& e = examples[k];
    const ItemScore pos = score_item(model, data, e.user, e.positive, e.time, with_grad);
    const ItemScore neg = score_item(model, data, e.user, negatives[k], e.time, with_grad);
    const PairLoss pl = bpr_pair_loss(pos.lambda, neg.lambda);
    loss += pl.loss;
    if (with_grad) {
      add_item_gradient(model, layout, e.user, e.positive, pos, pl.dmargin, *grad);
      add_item_gradient(model, layout, e.user, negatives[k], neg, -pl.dmargin, *grad);
    }
  }

  if (model.config.variant == Variant::kTransductive) {
    const double w = model.config.trainer.l2_weight;
    std::vector<UserId> users;
    std::vector<ItemId> items;
    for (std::size_t k = 0; k < examples.size(); ++k) {
      users.push_back(examples[k].user);
      items.push_back(examples[k].positive);
      items.push_back(negatives[k]);
    }
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());

    const BaseIntensityModel& base = *model.base;
    for (UserId u : users) {
      const auto row = base.user_row(u);
      loss += w * dot(row, row);
      if (with_grad) {
        for (std::size_t d = 0; d < row.size(); ++d) grad->add(layout.user_embedding(u, d), 2.0 * w * row[d]);
      }
    }
    for (ItemId i : items) {
      const auto row = base.item_row(i);
      loss += w * (dot(row, row) + base.bias(i) * base.bias(i));
      if (with_grad) {
        for (std::size_t d = 0; d < row.size(); ++d) grad->add(layout.item_embedding(i, d), 2.0 * w * row[d]);
        grad->add(layout.bias(i), 2.0 * w * base.bias(i));
      }
    }
  }
  return loss;
}

TrainerState::TrainerState(const TaiwModel& model, std::uint64_t seed)
    : layout(model),
      optimizer(layout.size(), AdamOptions{model.config.trainer.learning_rate}),
      gradient(layout.size()),
      rng(seed ^ 0x9E3779B97F4A7C15ULL) {}

double train_epoch(TaiwModel& model, const TrainingData& data, std::span<const TrainExample> examples,
                   TrainerState& state) {
  ++state.epoch;
  if (examples.empty()) {
    return 0.0;
  }
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), state.rng);

  const std::size_t batch_size = model.config.trainer.batch_size;
  std::vector<TrainExample> batch;
  std::vector<ItemId> negatives;
  double total = 0.0;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    batch.clear();
    negatives.clear();
    for (std::size_t k = start; k < end; ++k) {
      const TrainExample& e = examples[order[k]];
      batch.push_back(e);
      negatives.push_back(sample_negative(data.consumed(e.user), data.num_items(), state.rng));
    }
    state.gradient.clear();
    const double loss = batch_loss_and_gradient(model, state.layout, data, batch, negatives, &state.gradient);
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "non-finite loss in epoch " << state.epoch << ", batch starting at example " << start
          << " (user " << batch.front().user << ", item " << batch.front().positive << ")";
      throw std::runtime_error(msg.str());
    }
    total += loss;
    state.optimizer.step(model, state.layout, state.gradient);
  }
  return total / static_cast<double>(examples.size());
}

FitResult fit(const DatasetSplit& split, const ModelConfig& cfg, std::uint64_t seed,
              const EpochCallback& on_epoch) {
  TaiwModel model = initialize_model(split, cfg, seed);
  const TrainingData data(split.train, split.num_items);
  const auto examples = build_examples(split.train, cfg.variant);
  TrainerState state(model, seed);

  const std::size_t ks[] = {10};
  auto validate = [&](const TaiwModel& m) {
    const TaiwScorer scorer(m, split.train);
    return evaluate(scorer, split, Stage::kValidation, ks).ndcg(10);
  };

  FitResult result;
  if (cfg.trainer.epochs == 0) {
    result.best_val_ndcg10 = validate(model);
    result.model = std::move(model);
    return result;
  }
  for (int epoch = 1; epoch <= cfg.trainer.epochs; ++epoch) {
    const double loss = train_epoch(model, data, examples, state);
    const double val = validate(model);
    const EpochLog entry{epoch, loss, val};
    result.history.push_back(entry);
    if (on_epoch) on_epoch(entry);

    if (val > state.best_val_ndcg) {
      state.best_val_ndcg = val;
      state.best = model;
      state.stale_epochs = 0;
    } else if (++state.stale_epochs > cfg.trainer.patience) {
      break;
    }
  }
  result.model = std::move(*state.best);
  result.best_val_ndcg10 = state.best_val_ndcg;
  return result;
}

}  // namespace taiw
