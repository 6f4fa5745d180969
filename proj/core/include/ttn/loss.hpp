#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttn/dataset.hpp"
#include "ttn/dropout.hpp"
#include "ttn/model.hpp"

namespace ttn {

struct LossReport {
  double nll = 0.0;      // mean negative log-likelihood over the batch
  double penalty = 0.0;  // gamma * sum of squared tensor norms
  double accuracy = 0.0; // fraction of the batch predicted correctly
  size_t epoch = 0;
  size_t batch = 0;

  double objective() const { return nll + penalty; }
};

/// Mean NLL of the batch under Born probabilities, plus the norm penalty.
/// A vanishing decision vector raises DegenerateOutputError annotated with
/// the sample index. `stripes` fixes the summation partitioning so the
/// result is bit-stable regardless of thread count.
LossReport nll_loss(const TTNModel& model, const ImageSet& data,
                    std::span<const size_t> indices,
                    const DropoutMask* mask = nullptr, double gamma = 0.0,
                    size_t stripes = 1, size_t threads = 1);

/// Sum of squared Frobenius norms over every node tensor.
double model_norm_sq(const TTNModel& model);

struct EvalResult {
  double accuracy = 0.0;
  double mean_nll = 0.0; // over non-degenerate samples
  size_t degenerate = 0; // counted as misclassifications
  size_t count = 0;
};

/// Accuracy of argmax predictions over the dataset. Evaluation never applies
/// dropout (there is deliberately no mask parameter). Degenerate outputs
/// count as misses and are reported separately.
EvalResult evaluate_accuracy(const TTNModel& model, const ImageSet& data,
                             size_t threads = 0);
EvalResult evaluate_accuracy(const TTNModel& model, const ImageSet& data,
                             std::span<const size_t> indices, size_t threads = 0);

} // namespace ttn
