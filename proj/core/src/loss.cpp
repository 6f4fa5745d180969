#include "ttn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttn/errors.hpp"
#include "ttn/forward.hpp"
#include "ttn/parallel.hpp"

namespace ttn {

double model_norm_sq(const TTNModel& model) {
  double total = 0.0;
  for (size_t tau = 1; tau <= model.topology.layers; ++tau)
    for (size_t i = 0; i < model.topology.nodes_in_layer(tau); ++i)
      total += (model.kind == TensorKind::dense)
                   ? frobenius_norm_sq(model.dense_nodes[tau - 1][i])
                   : frobenius_norm_sq(model.cp_nodes[tau - 1][i]);
  return total;
}

LossReport nll_loss(const TTNModel& model, const ImageSet& data,
                    std::span<const size_t> indices, const DropoutMask* mask,
                    double gamma, size_t stripes, size_t threads) {
  if (indices.empty()) throw UsageError("nll_loss: empty batch");
  if (mask && model.kind != TensorKind::cp)
    throw UsageError("nll_loss: dropout mask supplied for a dense model");

  const size_t n_stripes = std::min(stripes == 0 ? size_t{1} : stripes, indices.size());
  std::vector<double> stripe_nll(n_stripes, 0.0);
  std::vector<size_t> stripe_correct(n_stripes, 0);

  parallel_stripes(n_stripes, threads, [&](size_t sidx) {
    Workspace ws;
    const size_t lo = indices.size() * sidx / n_stripes;
    const size_t hi = indices.size() * (sidx + 1) / n_stripes;
    for (size_t q = lo; q < hi; ++q) {
      const size_t sample = indices[q];
      const std::vector<Complex> f = forward(model, data.image(sample), mask, nullptr, &ws);
      double norm_sq = 0.0;
      for (const Complex& z : f) norm_sq += std::norm(z);
      if (!(norm_sq >= kBornNormFloor))
        throw DegenerateOutputError("nll_loss: decision vector collapsed at sample " +
                                    std::to_string(sample));
      const size_t y = static_cast<size_t>(data.label(sample)) - 1;
      if (y >= f.size())
        throw ConfigError("nll_loss: label " + std::to_string(data.label(sample)) +
                          " out of range at sample " + std::to_string(sample));
      stripe_nll[sidx] += -(std::log(std::norm(f[y])) - std::log(norm_sq));

      size_t best = 0;
      double best_val = std::norm(f[0]);
      for (size_t l = 1; l < f.size(); ++l)
        if (std::norm(f[l]) > best_val) {
          best_val = std::norm(f[l]);
          best = l;
        }
      if (best == y) ++stripe_correct[sidx];
    }
  });

  LossReport report;
  size_t correct = 0;
  for (size_t sidx = 0; sidx < n_stripes; ++sidx) {
    report.nll += stripe_nll[sidx];
    correct += stripe_correct[sidx];
  }
  report.nll /= static_cast<double>(indices.size());
  report.accuracy = static_cast<double>(correct) / static_cast<double>(indices.size());
  if (gamma != 0.0) report.penalty = gamma * model_norm_sq(model);
  return report;
}

EvalResult evaluate_accuracy(const TTNModel& model, const ImageSet& data,
                             std::span<const size_t> indices, size_t threads) {
  EvalResult result;
  result.count = indices.size();
  if (indices.empty()) return result;

  constexpr size_t kEvalStripes = 64; // fixed so reported nll is thread-count independent
  const size_t n_stripes = std::min(kEvalStripes, indices.size());
  std::vector<double> stripe_nll(n_stripes, 0.0);
  std::vector<size_t> stripe_correct(n_stripes, 0), stripe_degenerate(n_stripes, 0);

  parallel_stripes(n_stripes, threads, [&](size_t sidx) {
    Workspace ws;
    const size_t lo = indices.size() * sidx / n_stripes;
    const size_t hi = indices.size() * (sidx + 1) / n_stripes;
    for (size_t q = lo; q < hi; ++q) {
      const size_t sample = indices[q];
      const std::vector<Complex> f = forward(model, data.image(sample), nullptr, nullptr, &ws);
      double norm_sq = 0.0;
      for (const Complex& z : f) norm_sq += std::norm(z);
      if (!(norm_sq >= kBornNormFloor)) {
        ++stripe_degenerate[sidx];
        continue;
      }
      const size_t y = static_cast<size_t>(data.label(sample)) - 1;
      size_t best = 0;
      double best_val = std::norm(f[0]);
      for (size_t l = 1; l < f.size(); ++l)
        if (std::norm(f[l]) > best_val) {
          best_val = std::norm(f[l]);
          best = l;
        }
      if (best == y) ++stripe_correct[sidx];
      if (y < f.size())
        stripe_nll[sidx] += -(std::log(std::norm(f[y])) - std::log(norm_sq));
    }
  });

  size_t correct = 0;
  double nll = 0.0;
  for (size_t sidx = 0; sidx < n_stripes; ++sidx) {
    correct += stripe_correct[sidx];
    result.degenerate += stripe_degenerate[sidx];
    nll += stripe_nll[sidx];
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(indices.size());
  const size_t valid = indices.size() - result.degenerate;
  result.mean_nll = valid > 0 ? nll / static_cast<double>(valid) : 0.0;
  return result;
}

EvalResult evaluate_accuracy(const TTNModel& model, const ImageSet& data, size_t threads) {
  std::vector<size_t> idx(data.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return evaluate_accuracy(model, data, idx, threads);
}

} // namespace ttn
