#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ttn/dataset.hpp"
#include "ttn/loss.hpp"
#include "ttn/model.hpp"
#include "ttn/rng.hpp"

namespace ttn {

struct TrainConfig {
  double learn_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-7;
  double init_std = 0.4;
  double dropout_rate = 0.0; // p
  double penalty = 0.0;      // gamma
  size_t batch_size = 250;
  size_t epochs = 1;
  uint64_t rng_seed = 1;
  // Fixed chunk count for the in-batch gradient reduction; part of the
  // reproducibility contract, so it lives in the config rather than being
  // derived from the machine.
  size_t grad_stripes = 8;
  size_t threads = 0; // 0 = hardware concurrency; does not affect results

  void validate() const;
};

/// Every real and imaginary part drawn i.i.d. Normal(0, init_std), in
/// canonical parameter order; bit-reproducible for a fixed rng state.
TTNModel initialize_model(TreeTopology topology, TensorKind kind, size_t bond_dim,
                          size_t num_classes, FeatureMapSpec feature_map,
                          size_t cp_rank, double init_std, Rng& rng);

struct AdamState {
  std::vector<double> m, v; // first/second moments per real parameter
  uint64_t step = 0;
};

AdamState make_adam_state(size_t real_param_count);

/// One bias-corrected Adam update over the flat real parameter vector.
/// Throws DivergenceError (before touching any state) on non-finite
/// gradient components.
void adam_step(std::span<double> params, std::span<const double> grad,
               AdamState& state, const TrainConfig& config);

struct TrainHooks {
  // After every optimizer step; evaluation from a hook must not draw rng.
  std::function<void(const LossReport&, size_t batches_per_epoch)> after_batch;
  // After every completed epoch (the only points where a resumable
  // checkpoint is valid).
  std::function<void(size_t epoch)> after_epoch;
};

/// One pass over the training set: shuffle with the stream rng, then for
/// each mini-batch sample a fresh dropout mask (cp models with p > 0),
/// take a gradient step, and report. Divergence aborts with epoch/batch
/// context and the suggestion to enable the norm penalty.
std::vector<LossReport> train_epoch(TTNModel& model, const ImageSet& train,
                                    const TrainConfig& config, AdamState& state,
                                    Rng& rng, size_t epoch_index,
                                    const TrainHooks& hooks = {});

/// Runs config.epochs epochs; with epochs == 0 the model is left untouched.
std::vector<LossReport> train_for_epochs(TTNModel& model, const ImageSet& train,
                                         const TrainConfig& config, AdamState& state,
                                         Rng& rng, const TrainHooks& hooks = {});

} // namespace ttn
