#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttn/dropout.hpp"
#include "ttn/model.hpp"

namespace ttn {

/// Decision vectors with squared norm below this floor raise
/// DegenerateOutputError instead of being silently clamped; a vanishing
/// output is an optimization-divergence signal, not a valid state. The
/// floor sits near the subnormal boundary because healthy models are scale
/// free: at standard initialization a deep tree legitimately produces
/// ||f||^2 many orders of magnitude below 1, and only the loss of exponent
/// range itself marks true collapse.
inline constexpr double kBornNormFloor = 1e-290;

/// Cached activations of one evaluation: the embedded pixels and every
/// node's output vector. Needed by the reverse pass.
struct ForwardTrace {
  std::vector<std::vector<Complex>> leaf;                // [pixel] length d
  std::vector<std::vector<std::vector<Complex>>> level;  // [tau-1][node]
};

/// Reusable buffers for repeated evaluations on one thread.
struct Workspace {
  std::vector<Complex> scratch;
  std::vector<Complex> psi;
  std::vector<std::span<const Complex>> child_views;
};

/// Embeds every pixel and contracts layer by layer; the tensor-product image
/// vector is never materialized. With a mask, dropped CP terms are omitted
/// and survivors scaled by 1/(1-p); the top tensor is never masked.
std::vector<Complex> forward(const TTNModel& model, std::span<const double> image,
                             const DropoutMask* mask = nullptr,
                             ForwardTrace* trace = nullptr, Workspace* ws = nullptr,
                             MulCounter* counter = nullptr);

/// Born probabilities p_l = |f_l|^2 / ||f||^2.
std::vector<double> born_probabilities(std::span<const Complex> f);

/// Most probable class, 1-indexed; ties break toward the lowest index.
size_t predict(std::span<const Complex> f);

} // namespace ttn
