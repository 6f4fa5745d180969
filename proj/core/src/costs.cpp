#include "ttn/costs.hpp"

namespace ttn {

size_t param_count(const TreeTopology& topo, size_t bond_dim, size_t num_classes,
                   size_t feature_dim, TensorKind kind, size_t cp_rank) {
  size_t total = 0;
  for (size_t tau = 1; tau <= topo.layers; ++tau) {
    const NodeDims dims = node_dims(topo, bond_dim, num_classes, feature_dim, tau);
    size_t per_node = 0;
    if (kind == TensorKind::dense) {
      per_node = dims.out_dim;
      for (size_t d : dims.in_dims) per_node *= d;
    } else {
      size_t sum = dims.out_dim;
      for (size_t d : dims.in_dims) sum += d;
      per_node = cp_rank * sum;
    }
    total += per_node * topo.nodes_in_layer(tau);
  }
  return total;
}

size_t dense_contract_mul_count(size_t out_dim, std::span<const size_t> in_dims) {
  size_t total = 0;
  size_t prefix = 1;
  for (size_t d : in_dims) {
    prefix *= d;
    total += prefix;
  }
  return out_dim * total;
}

size_t cp_contract_mul_count(size_t rank, size_t out_dim,
                             std::span<const size_t> in_dims) {
  size_t sum_in = 0;
  for (size_t d : in_dims) sum_in += d;
  return rank * sum_in + rank * (in_dims.size() - 1) + rank * out_dim;
}

size_t forward_mul_count(const TreeTopology& topo, size_t bond_dim, size_t num_classes,
                         size_t feature_dim, TensorKind kind, size_t cp_rank) {
  size_t total = 0;
  for (size_t tau = 1; tau <= topo.layers; ++tau) {
    const NodeDims dims = node_dims(topo, bond_dim, num_classes, feature_dim, tau);
    const size_t per_node = (kind == TensorKind::dense)
                                ? dense_contract_mul_count(dims.out_dim, dims.in_dims)
                                : cp_contract_mul_count(cp_rank, dims.out_dim, dims.in_dims);
    total += per_node * topo.nodes_in_layer(tau);
  }
  return total;
}

} // namespace ttn
