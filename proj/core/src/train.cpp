#include "ttn/train.hpp"

#include <cmath>
#include <string>

#include "ttn/errors.hpp"
#include "ttn/gradients.hpp"
#include "ttn/params.hpp"

namespace ttn {

void TrainConfig::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(learn_rate) || !finite_nonneg(beta1) || !finite_nonneg(beta2) ||
      !finite_nonneg(adam_eps) || !finite_nonneg(init_std) || !finite_nonneg(penalty))
    throw ConfigError("TrainConfig: rates must be finite and nonnegative");
  if (beta1 >= 1.0 || beta2 >= 1.0)
    throw ConfigError("TrainConfig: beta1 and beta2 must be < 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
    throw ConfigError("TrainConfig: dropout rate must be in [0, 1)");
  if (batch_size == 0) throw ConfigError("TrainConfig: batch_size must be >= 1");
  if (grad_stripes == 0) throw ConfigError("TrainConfig: grad_stripes must be >= 1");
}

TTNModel initialize_model(TreeTopology topology, TensorKind kind, size_t bond_dim,
                          size_t num_classes, FeatureMapSpec feature_map,
                          size_t cp_rank, double init_std, Rng& rng) {
  TTNModel model = make_model(std::move(topology), kind, bond_dim, num_classes,
                              feature_map, cp_rank);
  const size_t count = model_param_count(model);
  std::vector<double> flat(2 * count);
  for (size_t p = 0; p < count; ++p) {
    const auto [re, im] = rng.normal_pair(0.0, init_std);
    flat[2 * p] = re;
    flat[2 * p + 1] = im;
  }
  import_params(model, flat);
  return model;
}

AdamState make_adam_state(size_t real_param_count) {
  AdamState state;
  state.m.assign(real_param_count, 0.0);
  state.v.assign(real_param_count, 0.0);
  return state;
}

void adam_step(std::span<double> params, std::span<const double> grad,
               AdamState& state, const TrainConfig& config) {
  if (params.size() != grad.size() || params.size() != state.m.size() ||
      params.size() != state.v.size())
    throw ShapeError("adam_step: parameter/gradient/state sizes disagree");

  for (double g : grad)
    if (!std::isfinite(g))
      throw DivergenceError("adam_step: non-finite gradient component");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));

  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= config.learn_rate * m_hat / (std::sqrt(v_hat) + config.adam_eps);
  }
}

std::vector<LossReport> train_epoch(TTNModel& model, const ImageSet& train,
                                    const TrainConfig& config, AdamState& state,
                                    Rng& rng, size_t epoch_index,
                                    const TrainHooks& hooks) {
  config.validate();
  if (train.size() == 0) throw UsageError("train_epoch: empty dataset");

  std::vector<size_t> order = iota_indices(train.size());
  shuffle_indices(order, rng);

  const size_t batches = (train.size() + config.batch_size - 1) / config.batch_size;
  const bool use_mask = model.kind == TensorKind::cp && config.dropout_rate > 0.0;

  std::vector<LossReport> reports;
  reports.reserve(batches);

  for (size_t batch = 0; batch < batches; ++batch) {
    const size_t lo = batch * config.batch_size;
    const size_t hi = std::min(lo + config.batch_size, train.size());
    const std::span<const size_t> batch_idx(order.data() + lo, hi - lo);

    DropoutMask mask;
    if (use_mask) mask = sample_dropout_mask(model, config.dropout_rate, rng);

    try {
      const BatchGradient bg =
          gradients(model, train, batch_idx, use_mask ? &mask : nullptr,
                    config.penalty, config.grad_stripes, config.threads);
      if (!std::isfinite(bg.nll) || !std::isfinite(bg.penalty))
        throw DivergenceError("non-finite loss");

      std::vector<double> params = export_params(model);
      adam_step(params, bg.grad, state, config);
      import_params(model, params);

      LossReport report;
      report.nll = bg.nll;
      report.penalty = bg.penalty;
      report.accuracy = static_cast<double>(bg.correct) / static_cast<double>(batch_idx.size());
      report.epoch = epoch_index;
      report.batch = batch;
      reports.push_back(report);
      if (hooks.after_batch) hooks.after_batch(report, batches);
    } catch (const DivergenceError& e) {
      throw DivergenceError("epoch " + std::to_string(epoch_index) + ", batch " +
                            std::to_string(batch) + ": " + e.what() +
                            "; consider enabling the norm penalty (gamma > 0)");
    }
  }
  return reports;
}

std::vector<LossReport> train_for_epochs(TTNModel& model, const ImageSet& train,
                                         const TrainConfig& config, AdamState& state,
                                         Rng& rng, const TrainHooks& hooks) {
  config.validate();
  std::vector<LossReport> all;
  for (size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<LossReport> reports =
        train_epoch(model, train, config, state, rng, epoch, hooks);
    all.insert(all.end(), reports.begin(), reports.end());
    if (hooks.after_epoch) hooks.after_epoch(epoch);
  }
  return all;
}

} // namespace ttn
