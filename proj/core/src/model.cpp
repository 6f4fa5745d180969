#include "ttn/model.hpp"

#include "ttn/errors.hpp"

namespace ttn {

TensorKind tensor_kind_from_string(std::string_view s) {
  if (s == "dense") return TensorKind::dense;
  if (s == "cp") return TensorKind::cp;
  throw ConfigError("unknown tensor kind '" + std::string(s) + "' (expected dense or cp)");
}

std::string to_string(TensorKind kind) {
  return kind == TensorKind::dense ? "dense" : "cp";
}

NodeDims node_dims(const TreeTopology& topo, size_t bond_dim, size_t num_classes,
                   size_t feature_dim, size_t tau) {
  if (tau == 0 || tau > topo.layers) throw ConfigError("node_dims: layer out of range");
  NodeDims dims;
  dims.out_dim = (tau == topo.layers) ? num_classes : bond_dim;
  const size_t child_dim = (tau == 1) ? feature_dim : bond_dim;
  dims.in_dims.assign(topo.branching, child_dim);
  return dims;
}

TTNModel make_model(TreeTopology topology, TensorKind kind, size_t bond_dim,
                    size_t num_classes, FeatureMapSpec feature_map, size_t cp_rank) {
  topology.validate();
  if (bond_dim == 0) throw ConfigError("make_model: bond_dim must be >= 1");
  if (num_classes < 2) throw ConfigError("make_model: num_classes must be >= 2");
  if (feature_map.d < 2) throw ConfigError("make_model: feature dimension must be >= 2");
  if (kind == TensorKind::cp && cp_rank == 0)
    throw ConfigError("make_model: cp models need cp_rank >= 1");

  TTNModel model;
  model.topology = std::move(topology);
  model.kind = kind;
  model.bond_dim = bond_dim;
  model.num_classes = num_classes;
  model.cp_rank = (kind == TensorKind::cp) ? cp_rank : 0;
  model.feature_map = feature_map;

  const size_t layers = model.topology.layers;
  if (kind == TensorKind::dense)
    model.dense_nodes.resize(layers);
  else
    model.cp_nodes.resize(layers);

  for (size_t tau = 1; tau <= layers; ++tau) {
    const NodeDims dims = node_dims(model.topology, bond_dim, num_classes, feature_map.d, tau);
    const size_t count = model.topology.nodes_in_layer(tau);
    if (kind == TensorKind::dense) {
      model.dense_nodes[tau - 1].reserve(count);
      for (size_t i = 0; i < count; ++i)
        model.dense_nodes[tau - 1].emplace_back(dims.out_dim, dims.in_dims);
    } else {
      model.cp_nodes[tau - 1].reserve(count);
      for (size_t i = 0; i < count; ++i)
        model.cp_nodes[tau - 1].emplace_back(cp_rank, dims.out_dim, dims.in_dims);
    }
  }
  return model;
}

} // namespace ttn
