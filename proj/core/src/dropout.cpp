#include "ttn/dropout.hpp"

#include "ttn/errors.hpp"

namespace ttn {

DropoutMask sample_dropout_mask(const TTNModel& model, double rate, Rng& rng) {
  if (model.kind != TensorKind::cp)
    throw UsageError("sample_dropout_mask: tensor dropout needs a cp model");
  if (!(rate >= 0.0 && rate < 1.0))
    throw ConfigError("sample_dropout_mask: rate must be in [0, 1)");

  DropoutMask mask;
  mask.rate = rate;
  const size_t layers = model.topology.layers;
  if (layers == 0) return mask;

  mask.keep.resize(layers - 1); // top tensor exempt
  for (size_t tau = 1; tau < layers; ++tau) {
    const size_t count = model.nodes_in_layer(tau);
    mask.keep[tau - 1].resize(count);
    for (size_t i = 0; i < count; ++i) {
      const size_t r = model.cp_nodes[tau - 1][i].rank();
      auto& keep = mask.keep[tau - 1][i];
      keep.resize(r);
      for (size_t k = 0; k < r; ++k)
        keep[k] = rng.bernoulli(1.0 - rate) ? 1 : 0;
    }
  }
  return mask;
}

} // namespace ttn
