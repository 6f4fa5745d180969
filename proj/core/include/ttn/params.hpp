#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttn/model.hpp"

namespace ttn {

/// Canonical flat ordering of the model's complex parameters: nodes in
/// topology order (layer 1..T, node index ascending); within a dense node
/// the row-major entries; within a CP node the output factors (term-major),
/// then each leg's factors (term-major). The real view interleaves
/// (re, im) per complex value. Gradients, Adam state, and checkpoints all
/// share this layout.
struct ParamLayout {
  std::vector<std::vector<size_t>> node_offset; // [tau-1][node], complex units
  size_t total = 0;                             // P, complex units
};

ParamLayout make_param_layout(const TTNModel& model);

size_t model_param_count(const TTNModel& model);

/// Copy parameters out as 2P doubles (re, im interleaved).
std::vector<double> export_params(const TTNModel& model);

/// Copy 2P doubles back into the model tensors.
void import_params(TTNModel& model, std::span<const double> flat);

} // namespace ttn
