#include <iostream>
#include <vector>

#include "commands.hpp"
#include "ttn/costs.hpp"
#include "ttn/errors.hpp"
#include "ttn/forward.hpp"

namespace ttn::cli {

namespace {

// Per-image multiply count measured by running the counted kernels on a
// blank image; cross-checked against the closed-form enumeration.
size_t measured_forward_muls(const TreeTopology& topo, TensorKind kind, size_t m,
                             size_t L, size_t d, size_t r) {
  const TTNModel model = make_model(topo, kind, m, L, FeatureMapSpec{d}, r);
  const std::vector<double> image(topo.num_pixels(), 0.0);
  MulCounter counter;
  (void)forward(model, image, nullptr, nullptr, nullptr, &counter);
  return counter.muls;
}

} // namespace

int cmd_inspect(const RunConfig& config) {
  if (config.resize == 0)
    throw ConfigError("inspect needs resize > 0 to fix the image shape");
  const size_t side = config.resize;
  const TreeTopology topo = build_topology(config.topology_kind(), side, side);

  std::cout << "topology " << config.topology << " on " << side << "x" << side << ": "
            << topo.layers << " layers, branching " << topo.branching << ", nodes [";
  for (size_t tau = 1; tau <= topo.layers; ++tau)
    std::cout << topo.nodes_in_layer(tau) << (tau < topo.layers ? "," : "]\n");

  const size_t m = config.bond_dim, L = config.num_classes, d = config.feature_dim;
  const size_t r = config.cp_rank;
  if (r == 0) throw ConfigError("inspect needs cp_rank >= 1 for the low-rank column");

  const size_t full_params = param_count(topo, m, L, d, TensorKind::dense, 0);
  const size_t cp_params = param_count(topo, m, L, d, TensorKind::cp, r);

  const size_t full_formula = forward_mul_count(topo, m, L, d, TensorKind::dense, 0);
  const size_t cp_formula = forward_mul_count(topo, m, L, d, TensorKind::cp, r);
  const size_t full_measured = measured_forward_muls(topo, TensorKind::dense, m, L, d, 0);
  const size_t cp_measured = measured_forward_muls(topo, TensorKind::cp, m, L, d, r);

  if (full_measured != full_formula || cp_measured != cp_formula)
    throw Error("inspect: measured multiply counts disagree with the enumeration");

  std::cout << "bond_dim m=" << m << ", classes L=" << L << ", feature_dim d=" << d
            << ", cp_rank r=" << r << "\n";
  std::cout << "complex parameters: full=" << full_params << " cp=" << cp_params
            << " ratio=" << format_double(static_cast<double>(full_params) /
                                          static_cast<double>(cp_params))
            << "\n";
  std::cout << "per-image complex multiplies (measured == enumerated):\n";
  std::cout << "  full: " << full_measured << "\n";
  std::cout << "  cp:   " << cp_measured << "\n";
  std::cout << "  ratio: "
            << format_double(static_cast<double>(full_measured) /
                             static_cast<double>(cp_measured))
            << "\n";
  return kExitOk;
}

} // namespace ttn::cli
