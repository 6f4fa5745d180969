#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ttn {

/// xoshiro256** generator with explicit, serializable state.
///
/// Every random draw in the library goes through this engine, so runs are
/// reproducible across platforms (std:: distributions are implementation
/// defined) and the complete generator state fits in a checkpoint.
class Rng {
public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, n). n must be nonzero.
  uint64_t bounded(uint64_t n);

  /// Two independent N(mean, stddev) draws from one Box-Muller pair.
  std::pair<double, double> normal_pair(double mean, double stddev);

  double normal(double mean, double stddev) { return normal_pair(mean, stddev).first; }

  /// True with probability p_true.
  bool bernoulli(double p_true) { return uniform() < p_true; }

  std::array<uint64_t, 4> state() const { return s_; }
  void set_state(const std::array<uint64_t, 4>& s) { s_ = s; }

  /// Derive a decorrelated seed for an independent stream.
  static uint64_t mix(uint64_t seed, uint64_t tag);

private:
  std::array<uint64_t, 4> s_{};
};

std::vector<size_t> iota_indices(size_t n);

/// In-place Fisher-Yates shuffle driven by Rng::bounded.
void shuffle_indices(std::span<size_t> idx, Rng& rng);

} // namespace ttn
