// taiw: preprocessing, training, evaluation and figure-data export for time-aware
// next-basket recommenders.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "taiw/baselines.hpp"
#include "taiw/checkpoint.hpp"
#include "taiw/config.hpp"
#include "taiw/evaluation.hpp"
#include "taiw/ingestion.hpp"
#include "taiw/kernel.hpp"
#include "taiw/model.hpp"
#include "taiw/synthetic.hpp"
#include "taiw/trainer.hpp"
#include "taiw/tuner.hpp"

namespace fs = std::filesystem;
using namespace taiw;

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream s;
  for (std::size_t k = 0; k < xs.size(); ++k) s << (k ? "," : "") << xs[k];
  return s.str();
}

// One structured text file per run directory.
struct Manifest {
  std::string command;
  std::string started = utc_now();
  std::string fingerprint;
  std::vector<std::uint64_t> seeds;
  KeyValueConfig config;
  std::vector<fs::path> outputs;

  void write(const fs::path& dir) const {
    std::ofstream out = open_out(dir / "manifest.txt");
    out << "command = " << command << '\n';
    out << "started = " << started << '\n';
    out << "finished = " << utc_now() << '\n';
    if (!fingerprint.empty()) out << "dataset_fingerprint = " << fingerprint << '\n';
    if (!seeds.empty()) out << "seeds = " << join(seeds) << '\n';
    for (const fs::path& p : outputs) out << "output = " << p.string() << '\n';
    for (const auto& [k, v] : config.entries()) out << "config." << k << " = " << v << '\n';
  }
};

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int k = 0; k < argc; ++k) s += (k ? " " : "") + std::string(argv[k]);
  return s;
}

DatasetSplit load_split(const fs::path& dir) { return split_leave_one_basket(read_canonical(dir)); }

KeyValueConfig load_optional(const std::string& path) {
  return path.empty() ? KeyValueConfig{} : KeyValueConfig::load(path);
}

bool is_taiw_kind(const std::string& kind) { return kind == "taiw" || kind == "taiwi"; }

void check_kind(const std::string& kind) {
  if (!is_taiw_kind(kind) && kind != "gp-pop" && kind != "tifu-knn") {
    throw ConfigError("unknown model '" + kind + "' (expected taiw, taiwi, gp-pop or tifu-knn)");
  }
}

ModelConfig model_config(const KeyValueConfig& cfg, const std::string& kind) {
  ModelConfig mc = ModelConfig::from_config(cfg);
  mc.variant = parse_variant(kind);
  mc.validate();
  return mc;
}

std::unique_ptr<Scorer> make_scorer(const Checkpoint& ckpt, const DatasetSplit& split) {
  if (ckpt.num_users != split.num_users() || ckpt.num_items != split.num_items) {
    throw DataError("checkpoint was trained on a dataset of a different shape");
  }
  if (is_taiw_kind(ckpt.kind)) {
    if (!ckpt.model) throw DataError("checkpoint has no model parameters");
    return std::make_unique<TaiwScorer>(*ckpt.model, split.train);
  }
  if (ckpt.kind == "gp-pop") return std::make_unique<GpPopScorer>(ckpt.global_counts);
  if (ckpt.kind == "tifu-knn") {
    return std::make_unique<TifuKnnScorer>(split.train, split.num_items, TifuConfig::from_config(ckpt.config));
  }
  throw DataError("unknown checkpoint kind '" + ckpt.kind + "'");
}

std::vector<std::size_t> usable_ks(std::vector<std::size_t> ks, std::size_t num_items) {
  std::vector<std::size_t> out;
  for (std::size_t k : ks) {
    if (k > 0 && k <= num_items) out.push_back(k);
  }
  if (out.empty()) throw ConfigError("no K value fits the " + std::to_string(num_items) + " items");
  return out;
}

// Trains one model of `kind` and returns its checkpoint.
Checkpoint train_model(const DatasetSplit& split, const std::string& kind, const KeyValueConfig& cfg,
                       std::uint64_t seed, double& val_ndcg10, const EpochCallback& on_epoch = {}) {
  Checkpoint ckpt;
  ckpt.kind = kind;
  ckpt.seed = seed;
  ckpt.num_users = split.num_users();
  ckpt.num_items = split.num_items;
  const std::size_t ks[] = {10};
  if (is_taiw_kind(kind)) {
    const ModelConfig mc = model_config(cfg, kind);
    FitResult fit_result = fit(split, mc, seed, on_epoch);
    val_ndcg10 = fit_result.best_val_ndcg10;
    ckpt.config = mc.to_config();
    ckpt.model = std::move(fit_result.model);
  } else if (kind == "gp-pop") {
    ckpt.global_counts = global_counts(split.train, split.num_items);
    val_ndcg10 = evaluate(GpPopScorer(ckpt.global_counts), split, Stage::kValidation, ks).ndcg(10);
  } else {
    const TifuConfig tc = TifuConfig::from_config(cfg);
    tc.validate();
    ckpt.config = tc.to_config();
    val_ndcg10 = evaluate(TifuKnnScorer(split.train, split.num_items, tc), split, Stage::kValidation, ks).ndcg(10);
  }
  return ckpt;
}

int cmd_preprocess(const std::string& input, const std::string& schema_path, const std::string& filter_path,
                   const fs::path& out_dir, Manifest manifest) {
  const KeyValueConfig schema_cfg = KeyValueConfig::load(schema_path);
  const KeyValueConfig filter_cfg = load_optional(filter_path);
  const SourceSchema schema = SourceSchema::from_config(schema_cfg);
  const FilterConfig filter = FilterConfig::from_config(filter_cfg);
  filter.validate();

  const InteractionLog raw = parse_transactions(input, schema);
  const InteractionLog log = filter_dataset(raw, filter);
  write_canonical(log, out_dir);

  manifest.fingerprint = canonical_fingerprint(out_dir);
  manifest.config = schema_cfg;
  manifest.config.merge(filter_cfg);
  manifest.outputs = {out_dir / "baskets.tsv", out_dir / "users.tsv", out_dir / "items.tsv"};
  manifest.write(out_dir);
  std::cout << "users=" << log.num_users() << " items=" << log.num_items() << " baskets=" << log.num_baskets()
            << " fingerprint=" << manifest.fingerprint << '\n';
  return 0;
}

int cmd_train(const fs::path& data, const std::string& kind, const std::string& config_path, std::uint64_t seed,
              const fs::path& out_ckpt, const std::string& log_path, Manifest manifest) {
  check_kind(kind);
  const DatasetSplit split = load_split(data);
  const KeyValueConfig cfg = load_optional(config_path);

  std::unique_ptr<std::ofstream> log;
  if (!log_path.empty()) {
    log = std::make_unique<std::ofstream>(open_out(log_path));
    *log << "epoch,mean_loss,val_ndcg10\n";
  }
  auto on_epoch = [&](const EpochLog& e) {
    if (log) *log << e.epoch << ',' << format_double(e.mean_loss) << ',' << format_double(e.val_ndcg10) << '\n';
  };
  double val = 0.0;
  const Checkpoint ckpt = train_model(split, kind, cfg, seed, val, on_epoch);
  save_checkpoint(out_ckpt, ckpt);

  const fs::path run_dir = out_ckpt.has_parent_path() ? out_ckpt.parent_path() : fs::path(".");
  manifest.fingerprint = canonical_fingerprint(data);
  manifest.seeds = {seed};
  manifest.config = ckpt.config;
  manifest.outputs = {out_ckpt};
  if (!log_path.empty()) manifest.outputs.emplace_back(log_path);
  manifest.write(run_dir);
  std::cout << "model=" << kind << " seed=" << seed << " val_ndcg10=" << format_double(val) << '\n';
  return 0;
}

int cmd_evaluate(const fs::path& data, const std::vector<std::string>& checkpoints, const std::string& kind,
                 const std::vector<std::size_t>& k_list, int gap_buckets, const std::vector<double>& alphas,
                 const fs::path& out_dir, Manifest manifest) {
  const DatasetSplit split = load_split(data);
  const auto ks = usable_ks(k_list, split.num_items);
  fs::create_directories(out_dir);
  manifest.fingerprint = canonical_fingerprint(data);

  std::vector<Checkpoint> ckpts;
  for (const std::string& path : checkpoints) {
    if (!fs::exists(path)) throw std::runtime_error("checkpoint not found: " + path);
    ckpts.push_back(load_checkpoint(path));
    if (!kind.empty() && ckpts.back().kind != kind) {
      throw ConfigError(path + " holds a '" + ckpts.back().kind + "' model, not '" + kind + "'");
    }
    if (ckpts.back().kind != ckpts.front().kind) throw ConfigError("checkpoints of different kinds");
    manifest.seeds.push_back(ckpts.back().seed);
  }

  std::vector<int> buckets;
  if (gap_buckets > 0) buckets = assign_gap_buckets(split, gap_buckets);
  const bool with_k10 = std::find(ks.begin(), ks.end(), std::size_t{10}) != ks.end();
  if (gap_buckets > 0 && !with_k10) throw ConfigError("--gap-buckets needs K=10 in the K list");

  std::ofstream metrics = open_out(out_dir / "metrics.csv");
  write_metrics_header(metrics);
  std::unique_ptr<std::ofstream> gaps;
  if (gap_buckets > 0) {
    gaps = std::make_unique<std::ofstream>(open_out(out_dir / "gap_bucket.csv"));
    write_gap_bucket_header(*gaps);
  }

  // Seeds are visited in checkpoint order, so the factory can walk the list.
  std::size_t next = 0;
  const ScorerFactory factory = [&](std::uint64_t) { return make_scorer(ckpts[next++], split); };
  MultiSeedReport all = evaluate_model(factory, split, Stage::kTest, ks, manifest.seeds);
  for (std::size_t s = 0; s < all.per_seed.size(); ++s) {
    EvalReport& r = all.per_seed[s];
    r.fingerprint = manifest.fingerprint;
    write_metrics_rows(metrics, r);
    if (gaps) {
      const auto means = gap_bucket_report(r, buckets, gap_buckets, 10);
      write_gap_bucket_rows(*gaps, r, means);
    }
  }
  if (all.per_seed.size() > 1) write_metrics_mean_rows(metrics, all.per_seed.front().model, all);
  manifest.outputs.push_back(out_dir / "metrics.csv");
  if (gaps) manifest.outputs.push_back(out_dir / "gap_bucket.csv");

  if (!alphas.empty()) {
    if (!is_taiw_kind(ckpts.front().kind)) throw ConfigError("--alpha-sweep applies to taiw and taiwi only");
    const TaiwScorer scorer(*ckpts.front().model, split.train);
    const auto curve = alpha_sweep(scorer, split, alphas, Stage::kTest);
    std::ofstream out = open_out(out_dir / "alpha_sweep.csv");
    write_alpha_sweep_csv(out, curve);
    manifest.outputs.push_back(out_dir / "alpha_sweep.csv");
  }
  manifest.write(out_dir);

  for (const EvalReport& r : all.per_seed) {
    std::cout << r.model << " seed=" << r.seed;
    for (std::size_t j = 0; j < r.ks.size(); ++j) {
      std::cout << " ndcg@" << r.ks[j] << '=' << format_double(r.mean_ndcg[j]);
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_ablate(const fs::path& data, const std::string& config_path, const std::vector<std::uint64_t>& seeds,
               const std::vector<std::size_t>& k_list, const fs::path& out_dir, Manifest manifest) {
  const DatasetSplit split = load_split(data);
  const auto ks = usable_ks(k_list, split.num_items);
  const KeyValueConfig cfg = load_optional(config_path);
  manifest.fingerprint = canonical_fingerprint(data);
  manifest.seeds = seeds;
  manifest.config = cfg;

  std::ofstream out = open_out(out_dir / "ablation.csv");
  write_metrics_header(out);
  for (const std::string kind : {"taiw", "taiwi"}) {
    const ModelConfig mc = model_config(cfg, kind);
    std::vector<std::shared_ptr<TaiwScorer>> trained;
    for (std::uint64_t seed : seeds) {
      trained.push_back(std::make_shared<TaiwScorer>(fit(split, mc, seed).model, split.train));
    }
    for (bool with_nbr : {true, false}) {
      std::size_t next = 0;
      const ScorerFactory factory = [&](std::uint64_t) -> std::unique_ptr<Scorer> {
        const TaiwScorer& s = *trained[next++];
        return std::make_unique<TaiwScorer>(s.with_blend(with_nbr, with_nbr ? mc.blend_alpha : 1.0));
      };
      const MultiSeedReport rep = evaluate_model(factory, split, Stage::kTest, ks, seeds);
      for (const EvalReport& r : rep.per_seed) write_metrics_rows(out, r);
      write_metrics_mean_rows(out, rep.per_seed.front().model, rep);
      std::cout << rep.per_seed.front().model;
      for (std::size_t j = 0; j < ks.size(); ++j) {
        std::cout << " ndcg@" << ks[j] << '=' << format_double(rep.mean_ndcg[j]);
      }
      std::cout << '\n';
    }
  }
  manifest.outputs = {out_dir / "ablation.csv"};
  manifest.write(out_dir);
  return 0;
}

int cmd_export_intensity(const fs::path& ckpt_path, const std::vector<std::string>& items, const std::string& data,
                         double dt_max, const fs::path& out_path) {
  if (!fs::exists(ckpt_path)) throw std::runtime_error("checkpoint not found: " + ckpt_path.string());
  const Checkpoint ckpt = load_checkpoint(ckpt_path);
  if (!ckpt.model) throw ConfigError("checkpoint of kind '" + ckpt.kind + "' has no intensity kernels");
  std::optional<InteractionLog> log;
  if (!data.empty()) log = read_canonical(data);

  std::vector<ItemId> ids;
  for (const std::string& raw : items) {
    if (log) {
      const auto id = log->items.find(raw);
      if (!id) throw DataError("unknown item '" + raw + "'");
      ids.push_back(*id);
    } else {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(raw, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != raw.size() || v >= ckpt.num_items) throw DataError("unknown item '" + raw + "'");
      ids.push_back(static_cast<ItemId>(v));
    }
  }

  std::ofstream out = open_out(out_path);
  out << "item_idx,dt_days,gamma\n";
  for (ItemId id : ids) {
    for (const KernelSample& s : sample_kernel(id, ckpt.model->kernels, dt_max)) {
      out << s.item << ',' << format_double(s.dt) << ',' << format_double(s.value) << '\n';
    }
  }
  return 0;
}

int cmd_tune(const fs::path& data, const std::string& kind, const std::string& space_path,
             const std::string& config_path, std::size_t trials, std::uint64_t seed, const fs::path& out_dir,
             Manifest manifest) {
  check_kind(kind);
  const DatasetSplit split = load_split(data);
  const KeyValueConfig base = load_optional(config_path);
  const SearchSpace space =
      space_path.empty() ? SearchSpace::defaults(kind) : SearchSpace::from_config(KeyValueConfig::load(space_path));

  const Objective objective = [&](const KeyValueConfig& params, std::uint64_t trial_seed) {
    KeyValueConfig cfg = base;
    cfg.merge(params);
    double val = 0.0;
    train_model(split, kind, cfg, trial_seed, val);
    return val;
  };
  const SearchResult result = random_search(space, trials, seed, objective);

  std::ofstream log = open_out(out_dir / "trials.csv");
  write_trial_log(log, space, result);
  const Trial& best = result.best_trial();
  KeyValueConfig best_cfg = base;
  best_cfg.merge(best.params);
  std::ofstream best_out = open_out(out_dir / "best_config.txt");
  best_cfg.write(best_out);

  manifest.fingerprint = canonical_fingerprint(data);
  manifest.seeds = {seed};
  manifest.config = best_cfg;
  manifest.outputs = {out_dir / "trials.csv", out_dir / "best_config.txt"};
  manifest.write(out_dir);
  std::cout << "best trial " << best.index << " val_ndcg10=" << format_double(best.val_ndcg10) << '\n';
  return 0;
}

int cmd_synth(std::size_t users, std::size_t items, const std::string& pattern_path, std::uint64_t seed,
              const fs::path& out_dir, Manifest manifest) {
  SyntheticConfig base;
  base.num_users = users;
  base.num_items = items;
  KeyValueConfig pcfg = load_optional(pattern_path);
  SyntheticConfig cfg = SyntheticConfig::from_config(pcfg, base);
  cfg.num_users = users;
  cfg.num_items = items;
  cfg.validate();

  const SyntheticData synth = generate_synthetic(cfg, seed);
  write_canonical(synth.log, out_dir);
  std::ofstream patterns = open_out(out_dir / "patterns.csv");
  write_patterns_csv(patterns, synth);
  std::ofstream tx = open_out(out_dir / "transactions.csv");
  tx << "user,item,day\n";
  for (const UserHistory& h : synth.log.histories) {
    for (const Basket& b : h.baskets) {
      for (ItemId i : b.items) {
        tx << synth.log.users.decode(h.user) << ',' << synth.log.items.decode(i) << ',' << format_double(b.time)
           << '\n';
      }
    }
  }

  manifest.fingerprint = canonical_fingerprint(out_dir);
  manifest.seeds = {seed};
  manifest.config = cfg.to_config();
  manifest.outputs = {out_dir / "baskets.tsv", out_dir / "users.tsv", out_dir / "items.tsv",
                      out_dir / "patterns.csv", out_dir / "transactions.csv"};
  manifest.write(out_dir);
  std::cout << "users=" << synth.log.num_users() << " items=" << synth.log.num_items()
            << " baskets=" << synth.log.num_baskets() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-aware next-basket recommendation toolkit"};
  app.require_subcommand(1);
  Manifest manifest;
  manifest.command = command_line(argc, argv);

  const std::vector<std::size_t> default_ks{5, 10, 20, 50, 100};

  // preprocess
  auto* pre = app.add_subcommand("preprocess", "Parse, filter and canonicalise a transaction CSV");
  std::string pre_input, pre_schema, pre_filter, pre_out;
  pre->add_option("--input", pre_input, "Transaction CSV")->required()->check(CLI::ExistingFile);
  pre->add_option("--schema-config", pre_schema, "Column mapping (key = value)")->required()->check(CLI::ExistingFile);
  pre->add_option("--filter-config", pre_filter, "Filtering thresholds")->check(CLI::ExistingFile);
  pre->add_option("--out", pre_out, "Output directory")->required();

  // train
  auto* train = app.add_subcommand("train", "Train one model");
  std::string tr_data, tr_model, tr_config, tr_ckpt, tr_log;
  std::uint64_t tr_seed = 0;
  train->add_option("--data", tr_data, "Canonical dataset directory")->required()->check(CLI::ExistingDirectory);
  train->add_option("--model", tr_model, "taiw, taiwi, gp-pop or tifu-knn")->required();
  train->add_option("--config", tr_config, "Hyperparameters (key = value)")->check(CLI::ExistingFile);
  train->add_option("--seed", tr_seed, "Random seed");
  train->add_option("--out-checkpoint", tr_ckpt, "Checkpoint path")->required();
  train->add_option("--log", tr_log, "Per-epoch CSV log");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score checkpoints on the test baskets");
  std::string ev_data, ev_model, ev_out;
  std::vector<std::string> ev_ckpts;
  std::vector<std::size_t> ev_ks = default_ks;
  int ev_buckets = 0;
  std::vector<double> ev_alphas;
  ev->add_option("--data", ev_data, "Canonical dataset directory")->required()->check(CLI::ExistingDirectory);
  ev->add_option("--checkpoint", ev_ckpts, "Checkpoint(s), one per seed")->required()->delimiter(',');
  ev->add_option("--model", ev_model, "Expected model kind");
  ev->add_option("--K", ev_ks, "Cut-offs")->delimiter(',');
  ev->add_option("--gap-buckets", ev_buckets, "Number of gap buckets (0 = none)")->check(CLI::NonNegativeNumber);
  ev->add_option("--alpha-sweep", ev_alphas, "Blend alphas to sweep")->delimiter(',');
  ev->add_option("--out", ev_out, "Output directory")->required();

  // ablate
  auto* ab = app.add_subcommand("ablate", "TAIW/TAIWI with and without the neighbourhood module");
  std::string ab_data, ab_config, ab_out;
  std::vector<std::uint64_t> ab_seeds{1, 2, 3};
  std::vector<std::size_t> ab_ks = default_ks;
  ab->add_option("--data", ab_data, "Canonical dataset directory")->required()->check(CLI::ExistingDirectory);
  ab->add_option("--config", ab_config, "Hyperparameters (key = value)")->check(CLI::ExistingFile);
  ab->add_option("--seeds", ab_seeds, "Seeds")->delimiter(',');
  ab->add_option("--K", ab_ks, "Cut-offs")->delimiter(',');
  ab->add_option("--out", ab_out, "Output directory")->required();

  // export-intensity
  auto* ex = app.add_subcommand("export-intensity", "Sample learned kernels on a day grid");
  std::string ex_ckpt, ex_data, ex_out;
  std::vector<std::string> ex_items;
  double ex_dt_max = 365.0;
  ex->add_option("--checkpoint", ex_ckpt, "TAIW or TAIWI checkpoint")->required();
  ex->add_option("--items", ex_items, "Item ids (raw ids with --data, indices otherwise)")->required()->delimiter(',');
  ex->add_option("--data", ex_data, "Dataset directory for raw item ids")->check(CLI::ExistingDirectory);
  ex->add_option("--dt-max", ex_dt_max, "Largest gap in days")->check(CLI::NonNegativeNumber);
  ex->add_option("--out", ex_out, "Output CSV")->required();

  // tune
  auto* tu = app.add_subcommand("tune", "Random hyperparameter search on validation NDCG@10");
  std::string tu_data, tu_model, tu_space, tu_config, tu_out;
  std::size_t tu_trials = 25;
  std::uint64_t tu_seed = 0;
  tu->add_option("--data", tu_data, "Canonical dataset directory")->required()->check(CLI::ExistingDirectory);
  tu->add_option("--model", tu_model, "taiw, taiwi, gp-pop or tifu-knn")->required();
  tu->add_option("--space-config", tu_space, "Search space (key = kind args)")->check(CLI::ExistingFile);
  tu->add_option("--config", tu_config, "Fixed hyperparameters")->check(CLI::ExistingFile);
  tu->add_option("--trials", tu_trials, "Number of trials")->check(CLI::PositiveNumber);
  tu->add_option("--seed", tu_seed, "Search seed");
  tu->add_option("--out", tu_out, "Output directory")->required();

  // synth
  auto* sy = app.add_subcommand("synth", "Generate a synthetic dataset with planted repurchase gaps");
  std::size_t sy_users = 500, sy_items = 50;
  std::string sy_pattern, sy_out;
  std::uint64_t sy_seed = 0;
  sy->add_option("--users", sy_users, "Number of users");
  sy->add_option("--items", sy_items, "Number of items");
  sy->add_option("--pattern-config", sy_pattern, "Generator settings (key = value)")->check(CLI::ExistingFile);
  sy->add_option("--seed", sy_seed, "Random seed");
  sy->add_option("--out", sy_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pre) return cmd_preprocess(pre_input, pre_schema, pre_filter, pre_out, manifest);
    if (*train) return cmd_train(tr_data, tr_model, tr_config, tr_seed, tr_ckpt, tr_log, manifest);
    if (*ev) return cmd_evaluate(ev_data, ev_ckpts, ev_model, ev_ks, ev_buckets, ev_alphas, ev_out, manifest);
    if (*ab) return cmd_ablate(ab_data, ab_config, ab_seeds, ab_ks, ab_out, manifest);
    if (*ex) return cmd_export_intensity(ex_ckpt, ex_items, ex_data, ex_dt_max, ex_out);
    if (*tu) return cmd_tune(tu_data, tu_model, tu_space, tu_config, tu_trials, tu_seed, tu_out, manifest);
    if (*sy) return cmd_synth(sy_users, sy_items, sy_pattern, sy_seed, sy_out, manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
