#pragma once

#include <cstdint>
#include <vector>

#include "ttn/model.hpp"
#include "ttn/rng.hpp"

namespace ttn {

/// Per-term keep/drop indicators for every CP node below the top tensor.
/// keep[tau-1][node][k] is 1 with probability 1-rate; the top layer carries
/// no entries and is never masked.
struct DropoutMask {
  double rate = 0.0;
  std::vector<std::vector<std::vector<uint8_t>>> keep;

  double keep_scale() const { return 1.0 / (1.0 - rate); }
};

DropoutMask sample_dropout_mask(const TTNModel& model, double rate, Rng& rng);

} // namespace ttn
