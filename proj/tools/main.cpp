#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ttn/errors.hpp"

namespace {

using ttn::cli::RunConfig;

// Attaches the shared config options: a config file, generic --set
// overrides, and dedicated flags for the common keys. Precedence is
// file < --set < dedicated flags.
struct ConfigArgs {
  std::string config_file;
  std::vector<std::string> overrides;
  std::vector<std::string> flag_overrides;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key=value config file");
    app->add_option("--set", overrides, "override a config key (key=value), repeatable");

    auto flag = [this, app](const std::string& name, const std::string& key,
                            const std::string& help) {
      app->add_option_function<std::string>(
              name,
              [this, key](const std::string& v) { flag_overrides.push_back(key + "=" + v); },
              help)
          ->take_last();
    };
    flag("--dataset", "dataset", "dataset name (mnist, fashion-mnist)");
    flag("--data-dir", "data_dir", "dataset root (default $TTN_DATA_DIR)");
    flag("--out-dir", "out_dir", "run output directory");
    flag("--topology", "topology", "1d-b2 | 2d-b2-alternating | 2d-b4");
    flag("--kind", "kind", "dense | cp");
    flag("--bond-dim", "bond_dim", "bond dimension m");
    flag("--cp-rank", "cp_rank", "CP rank r");
    flag("--num-classes", "num_classes", "number of classes L");
    flag("--feature-dim", "feature_dim", "local feature dimension d");
    flag("--resize", "resize", "resize images to this side length (0 = native)");
    flag("--train-count", "train_count", "training images drawn from the train file");
    flag("--val-count", "val_count", "validation images drawn from the train file");
    flag("--test-count", "test_count", "test images taken from the test file");
    flag("--learn-rate", "learn_rate", "Adam learning rate");
    flag("--dropout", "dropout", "tensor dropout rate p");
    flag("--penalty", "penalty", "norm penalty coefficient gamma");
    flag("--batch-size", "batch_size", "mini-batch size");
    flag("--epochs", "epochs", "epochs to train");
    flag("--seed", "seed", "run seed");
    flag("--threads", "threads", "worker threads (0 = hardware)");
    flag("--grad-stripes", "grad_stripes", "fixed reduction chunks per batch");
    flag("--eval-per-epoch", "eval_per_epoch", "metric rows per epoch");
    flag("--train-eval-subset", "train_eval_subset", "train samples per metrics row");
    flag("--eval-full-train", "eval_full_train", "evaluate the full train set (1/0)");
    flag("--checkpoint-cadence", "checkpoint_cadence", "epochs between checkpoints");
  }

  RunConfig build() const {
    RunConfig config = config_file.empty() ? RunConfig{} : RunConfig::from_file(config_file);
    config.apply_overrides(overrides);
    config.apply_overrides(flag_overrides);
    return config;
  }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree tensor network image classifier"};
  app.require_subcommand(1);

  ConfigArgs train_args;
  std::string resume_path;
  CLI::App* train = app.add_subcommand("train", "train a classifier, stream metrics");
  train_args.attach(train);
  train->add_option("--resume", resume_path, "continue from an epoch-boundary checkpoint");

  std::string eval_checkpoint, eval_split = "test", eval_data_dir;
  size_t eval_threads = 0;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint on a split");
  eval->add_option("--checkpoint", eval_checkpoint, "checkpoint file")->required();
  eval->add_option("--split", eval_split, "train | val | test (default test)");
  eval->add_option("--data-dir", eval_data_dir, "override the checkpoint's dataset root");
  eval->add_option("--threads", eval_threads, "worker threads (0 = hardware)");

  ConfigArgs inspect_args;
  CLI::App* inspect = app.add_subcommand("inspect", "report parameter and cost counts");
  inspect_args.attach(inspect);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return ttn::cli::cmd_train(train_args.build(), resume_path);
    if (eval->parsed())
      return ttn::cli::cmd_eval(eval_checkpoint, eval_split, eval_data_dir, eval_threads);
    if (inspect->parsed()) return ttn::cli::cmd_inspect(inspect_args.build());
  } catch (const ttn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ttn::cli::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ttn::cli::kExitError;
  }
  return ttn::cli::kExitError;
}
