#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "checkpoint.hpp"
#include "commands.hpp"
#include "ttn/errors.hpp"
#include "ttn/gradients.hpp"
#include "ttn/params.hpp"

namespace ttn::cli {

namespace {

constexpr const char* kMetricsHeader =
    "epoch,batch,train_nll,penalty,train_acc,val_acc,wall_seconds\n";

class MetricsWriter {
public:
  MetricsWriter(const std::filesystem::path& path, bool append) {
    const bool fresh = !append || !std::filesystem::exists(path);
    out_.open(path, fresh ? (std::ios::out | std::ios::trunc)
                          : (std::ios::out | std::ios::app));
    if (!out_) throw IoError("cannot open metrics file " + path.string());
    if (fresh) {
      out_ << kMetricsHeader;
      out_.flush();
    }
  }

  void row(size_t epoch, size_t batch, double train_nll, double penalty,
           double train_acc, double val_acc, double wall_seconds) {
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", wall_seconds);
    out_ << epoch << ',' << batch << ',' << format_double(train_nll) << ','
         << format_double(penalty) << ',' << format_double(train_acc) << ','
         << format_double(val_acc) << ',' << wall << '\n';
    out_.flush(); // rows survive a later divergence abort
  }

private:
  std::ofstream out_;
};

std::set<size_t> eval_points(size_t batches, size_t per_epoch) {
  std::set<size_t> points;
  if (per_epoch == 0) return points;
  for (size_t k = 1; k <= per_epoch; ++k)
    points.insert(std::max<size_t>(1, (k * batches) / per_epoch));
  return points;
}

std::filesystem::path epoch_checkpoint_path(const RunConfig& config, size_t epoch) {
  char name[64];
  std::snprintf(name, sizeof(name), "checkpoint_epoch%04zu.ttn", epoch);
  return std::filesystem::path(config.out_dir) / name;
}

// Fixed per run: drawn from a dedicated seed stream, not the training
// stream, so resumed runs evaluate the same subset.
std::vector<size_t> pick_eval_subset(size_t train_size, size_t subset, uint64_t seed) {
  std::vector<size_t> idx = iota_indices(train_size);
  if (subset == 0 || subset >= train_size) return idx;
  Rng rng(seed);
  shuffle_indices(idx, rng);
  idx.resize(subset);
  return idx;
}

} // namespace

int cmd_train(RunConfig config, const std::string& resume_path) {
  Checkpoint resume;
  const bool resuming = !resume_path.empty();
  if (resuming) {
    resume = load_checkpoint(resume_path);
    if (!resume.at_epoch_boundary)
      throw ConfigError("cannot resume from a mid-epoch (best-validation) checkpoint; "
                        "use an epoch-boundary checkpoint");
    RunConfig embedded = RunConfig::from_text(resume.config_text);
    // Only run-mechanics keys may change on resume.
    embedded.epochs = config.epochs;
    embedded.out_dir = config.out_dir;
    embedded.data_dir = config.data_dir;
    embedded.threads = config.threads;
    if (embedded.canonical_text() != config.canonical_text())
      throw ConfigError("resume config differs from the checkpoint in a structural key; "
                        "only epochs / out_dir / data_dir / threads may change");
    config = embedded;
  }
  config.validate();

  const auto start_time = std::chrono::steady_clock::now();
  auto wall_seconds = [&start_time] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
        .count();
  };

  std::filesystem::create_directories(config.out_dir);
  LoadedData data = load_dataset(config);
  const Splits& splits = data.splits;
  std::cout << "dataset " << config.dataset << ": train " << splits.train.size()
            << ", val " << splits.val.size() << ", test " << splits.test.size() << " ("
            << data.height << "x" << data.width << ")\n";

  const TreeTopology topo =
      build_topology(config.topology_kind(), data.height, data.width);

  TTNModel model = make_model(topo, config.tensor_kind(), config.bond_dim,
                              config.num_classes, FeatureMapSpec{config.feature_dim},
                              config.cp_rank);
  AdamState adam;
  Rng rng(config.stream_seed());
  size_t start_epoch = 1;
  double best_val = -1.0;

  if (resuming) {
    if (resume.height != data.height || resume.width != data.width)
      throw ConfigError("checkpoint image shape does not match the dataset");
    import_params(model, resume.params);
    adam = resume.adam;
    rng.set_state(resume.rng_state);
    start_epoch = resume.epoch + 1;
    best_val = resume.best_val_acc;
    std::cout << "resumed from " << resume_path << " after epoch " << resume.epoch << "\n";
  } else {
    model = initialize_model(topo, config.tensor_kind(), config.bond_dim,
                             config.num_classes, FeatureMapSpec{config.feature_dim},
                             config.cp_rank, config.init_std, rng);
    adam = make_adam_state(2 * model_param_count(model));
    save_checkpoint(epoch_checkpoint_path(config, 0),
                    snapshot(config, model, adam, rng, 0, true, best_val));
  }

  {
    std::ofstream echo(std::filesystem::path(config.out_dir) / "run.cfg");
    echo << "# resize_method=bilinear, validation split = seeded shuffle\n"
         << config.canonical_text();
  }

  const std::vector<size_t> subset_idx = pick_eval_subset(
      splits.train.size(),
      config.eval_full_train ? splits.train.size() : config.train_eval_subset,
      config.subset_seed());
  const std::vector<size_t> val_idx = iota_indices(splits.val.size());

  MetricsWriter metrics(std::filesystem::path(config.out_dir) / "metrics.csv", resuming);
  const TrainConfig tc = config.train_config();
  const std::filesystem::path best_path =
      std::filesystem::path(config.out_dir) / "checkpoint_best.ttn";

  size_t best_epoch = 0;
  auto evaluate_point = [&](size_t epoch, size_t batch, size_t batches) {
    const EvalResult train_eval =
        evaluate_accuracy(model, splits.train, subset_idx, config.threads);
    const EvalResult val_eval =
        splits.val.size() > 0
            ? evaluate_accuracy(model, splits.val, val_idx, config.threads)
            : EvalResult{};
    const double pen = config.penalty != 0.0
                           ? config.penalty * model_norm_sq(model)
                           : 0.0;
    metrics.row(epoch, batch, train_eval.mean_nll, pen, train_eval.accuracy,
                val_eval.accuracy, wall_seconds());
    std::cout << "epoch " << epoch << " batch " << batch << ": train_acc "
              << format_double(train_eval.accuracy) << " val_acc "
              << format_double(val_eval.accuracy) << "\n";
    if (val_eval.accuracy > best_val) {
      best_val = val_eval.accuracy;
      best_epoch = epoch;
      save_checkpoint(best_path, snapshot(config, model, adam, rng, epoch,
                                          batch == batches, best_val));
    }
  };

  try {
    for (size_t epoch = start_epoch; epoch <= config.epochs; ++epoch) {
      const size_t batches =
          (splits.train.size() + config.batch_size - 1) / config.batch_size;
      const std::set<size_t> points = eval_points(batches, config.eval_per_epoch);

      TrainHooks hooks;
      hooks.after_batch = [&](const LossReport& report, size_t total) {
        if (points.count(report.batch + 1))
          evaluate_point(report.epoch, report.batch + 1, total);
      };
      train_epoch(model, splits.train, tc, adam, rng, epoch, hooks);

      if (config.checkpoint_cadence != 0 &&
          (epoch % config.checkpoint_cadence == 0 || epoch == config.epochs))
        save_checkpoint(epoch_checkpoint_path(config, epoch),
                        snapshot(config, model, adam, rng, epoch, true, best_val));
    }
  } catch (const DivergenceError& e) {
    std::cerr << "error: training diverged: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const DegenerateOutputError& e) {
    std::cerr << "error: training diverged: " << e.what() << "\n";
    return kExitDivergence;
  }

  if (config.epochs >= start_epoch && best_val >= 0.0) {
    std::cout << "best validation accuracy: " << format_double(best_val) << " (epoch "
              << best_epoch << ")\n";
    const Checkpoint best = load_checkpoint(best_path);
    const TTNModel best_model = model_from_checkpoint(best);
    const EvalResult test_eval =
        evaluate_accuracy(best_model, splits.test, config.threads);
    char acc[32];
    std::snprintf(acc, sizeof(acc), "%.4f", test_eval.accuracy);
    std::cout << "test accuracy (best-validation model): " << acc << "\n";
  }
  return kExitOk;
}

} // namespace ttn::cli
