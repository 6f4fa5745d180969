#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ttn/cp_tensor.hpp"
#include "ttn/dense_tensor.hpp"
#include "ttn/feature_map.hpp"
#include "ttn/topology.hpp"

namespace ttn {

enum class TensorKind { dense, cp };

TensorKind tensor_kind_from_string(std::string_view s);
std::string to_string(TensorKind kind);

struct NodeDims {
  size_t out_dim = 0;
  std::vector<size_t> in_dims;
};

/// Dimensions of every node in layer tau (uniform within a layer):
/// layer 1 maps b feature vectors of length d, intermediate layers map b
/// bond vectors of length m, and the top layer outputs the L class amplitudes.
NodeDims node_dims(const TreeTopology& topo, size_t bond_dim, size_t num_classes,
                   size_t feature_dim, size_t tau);

/// Classifier state: the tree plus one tensor per node, all dense or all CP.
struct TTNModel {
  TreeTopology topology;
  TensorKind kind = TensorKind::dense;
  size_t bond_dim = 0;    // m
  size_t num_classes = 0; // L
  size_t cp_rank = 0;     // r; 0 when dense
  FeatureMapSpec feature_map;

  // Exactly one of these is populated, indexed [tau-1][node].
  std::vector<std::vector<DenseTensor>> dense_nodes;
  std::vector<std::vector<CPTensor>> cp_nodes;

  size_t nodes_in_layer(size_t tau) const { return topology.nodes_in_layer(tau); }
};

/// Zero-initialized model with the right tensor shapes everywhere.
TTNModel make_model(TreeTopology topology, TensorKind kind, size_t bond_dim,
                    size_t num_classes, FeatureMapSpec feature_map, size_t cp_rank = 0);

} // namespace ttn
