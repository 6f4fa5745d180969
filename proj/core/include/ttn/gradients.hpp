#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttn/dataset.hpp"
#include "ttn/dropout.hpp"
#include "ttn/loss.hpp"
#include "ttn/model.hpp"

namespace ttn {

/// Gradient of the batch objective (mean NLL + gamma * sum ||A||^2) with
/// respect to every real parameter, in the canonical flat layout
/// (re, im interleaved; see ParamLayout).
struct BatchGradient {
  std::vector<double> grad;
  double nll = 0.0;
  double penalty = 0.0;
  size_t correct = 0;

  double objective() const { return nll + penalty; }
};

/// Analytic reverse pass. The objective is real, so each complex parameter
/// is treated as two real parameters; with a mask, the kept/dropped
/// indicators and the 1/(1-p) factor are constants of the pass. Samples are
/// partitioned into `stripes` fixed contiguous chunks accumulated in chunk
/// order, so results do not depend on the number of worker threads.
BatchGradient gradients(const TTNModel& model, const ImageSet& data,
                        std::span<const size_t> indices, const DropoutMask* mask,
                        double gamma, size_t stripes = 8, size_t threads = 0);

} // namespace ttn
