#include "taiw/model.hpp"

#include <stdexcept>

namespace taiw {

std::string to_string(Variant v) {
  return v == Variant::kTransductive ? "taiw" : "taiwi";
}

Variant parse_variant(const std::string& s) {
  if (s == "taiw" || s == "transductive") return Variant::kTransductive;
  if (s == "taiwi" || s == "inductive") return Variant::kInductive;
  throw ConfigError("unknown variant '" + s + "' (expected taiw or taiwi)");
}

void ModelConfig::validate() const {
  if (!(blend_alpha >= 0.0 && blend_alpha <= 1.0)) {
    throw ConfigError("blend_alpha must lie in [0, 1]");
  }
  if (k_neighbors < 1) {
    throw ConfigError("k_neighbors must be positive");
  }
  if (!(trainer.learning_rate >= 0.0)) {
    throw ConfigError("learning_rate must be non-negative");
  }
  if (trainer.batch_size < 1) {
    throw ConfigError("batch_size must be positive");
  }
  if (trainer.epochs < 0 || trainer.patience < 0) {
    throw ConfigError("epochs and patience must be non-negative");
  }
  if (!(trainer.l2_weight >= 0.0)) {
    throw ConfigError("l2_weight must be non-negative");
  }
  if (variant == Variant::kTransductive && trainer.dim < 1) {
    throw ConfigError("dim must be positive for the transductive model");
  }
}

ModelConfig ModelConfig::from_config(const KeyValueConfig& cfg, ModelConfig base) {
  ModelConfig c = base;
  if (auto v = cfg.get("variant")) c.variant = parse_variant(*v);
  c.use_neighborhood = cfg.get_bool("use_neighborhood", c.use_neighborhood);
  c.blend_alpha = cfg.get_double("blend_alpha", c.blend_alpha);
  c.k_neighbors = static_cast<std::size_t>(cfg.get_int("k_neighbors", static_cast<long>(c.k_neighbors)));
  auto& t = c.trainer;
  t.learning_rate = cfg.get_double("learning_rate", t.learning_rate);
  t.batch_size = static_cast<std::size_t>(cfg.get_int("batch_size", static_cast<long>(t.batch_size)));
  t.epochs = static_cast<int>(cfg.get_int("epochs", t.epochs));
  t.patience = static_cast<int>(cfg.get_int("patience", t.patience));
  t.l2_weight = cfg.get_double("l2_weight", t.l2_weight);
  t.dim = static_cast<std::size_t>(cfg.get_int("dim", static_cast<long>(t.dim)));
  t.init_stddev = cfg.get_double("init_stddev", t.init_stddev);
  t.freeze_kernel = cfg.get_bool("freeze_kernel", t.freeze_kernel);
  c.validate();
  return c;
}

KeyValueConfig ModelConfig::to_config() const {
  KeyValueConfig cfg;
  cfg.set("variant", to_string(variant));
  cfg.set("use_neighborhood", use_neighborhood ? "true" : "false");
  cfg.set("blend_alpha", format_double(blend_alpha));
  cfg.set("k_neighbors", std::to_string(k_neighbors));
  cfg.set("learning_rate", format_double(trainer.learning_rate));
  cfg.set("batch_size", std::to_string(trainer.batch_size));
  cfg.set("epochs", std::to_string(trainer.epochs));
  cfg.set("patience", std::to_string(trainer.patience));
  cfg.set("l2_weight", format_double(trainer.l2_weight));
  cfg.set("dim", std::to_string(trainer.dim));
  cfg.set("init_stddev", format_double(trainer.init_stddev));
  cfg.set("freeze_kernel", trainer.freeze_kernel ? "true" : "false");
  return cfg;
}

TaiwModel initialize_model(const DatasetSplit& split, const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  TaiwModel model;
  model.config = cfg;
  model.kernels = initialize_kernels(split.train, split.num_items);
  if (cfg.variant == Variant::kTransductive) {
    model.base = BaseIntensityModel::random(split.num_users(), split.num_items, cfg.trainer.dim, seed,
                                            cfg.trainer.init_stddev);
  }
  return model;
}

double kernel_sum(ItemId item, Timestamp t, const PurchaseIndex& purchases, const KernelParams& params) {
  const auto times = purchases.before(item, t);
  if (times.empty()) {
    return 0.0;
  }
  const ItemKernel k = params.constrained(item);
  double s = 0.0;
  for (Timestamp tj : times) {
    s += k(t - tj);
  }
  return s;
}

double intensity(UserId user, ItemId item, Timestamp t, const PurchaseIndex& purchases,
                 const TaiwModel& model) {
  const double repurchase = kernel_sum(item, t, purchases, model.kernels);
  if (model.config.variant == Variant::kInductive) {
    return repurchase;
  }
  const double alpha = softplus(model.kernels.raw(item, kRawExcite));
  return base_intensity(user, item, *model.base) + alpha * repurchase;
}

double intensity(UserId user, ItemId item, Timestamp t, const UserHistory& history,
                 const TaiwModel& model) {
  return intensity(user, item, t, PurchaseIndex(history), model);
}

UserVector user_vector(UserId user, Timestamp t, const PurchaseIndex& purchases, const TaiwModel& model) {
  const std::size_t n = model.num_items();
  if (model.config.variant == Variant::kInductive) {
    std::vector<std::pair<ItemId, double>> entries;
    for (ItemId item : purchases.items()) {
      if (!purchases.before(item, t).empty()) {
        entries.emplace_back(item, kernel_sum(item, t, purchases, model.kernels));
      }
    }
    return UserVector::sparse(n, std::move(entries));
  }
  std::vector<double> values(n);
  for (ItemId item = 0; item < n; ++item) {
    values[item] = base_intensity(user, item, *model.base);
  }
  for (ItemId item : purchases.items()) {
    const double s = kernel_sum(item, t, purchases, model.kernels);
    if (s != 0.0) {
      values[item] += softplus(model.kernels.raw(item, kRawExcite)) * s;
    }
  }
  return UserVector::dense(std::move(values));
}

UserVector user_vector(UserId user, Timestamp t, const UserHistory& history, const TaiwModel& model) {
  return user_vector(user, t, PurchaseIndex(history), model);
}

}  // namespace taiw
