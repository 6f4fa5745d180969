#pragma once

#include <cstddef>
#include <span>

#include "ttn/model.hpp"
#include "ttn/topology.hpp"

namespace ttn {

/// Exact complex-parameter count of a whole classifier:
/// dense nodes contribute out_dim * prod(in_dims), CP nodes
/// r * (out_dim + sum(in_dims)).
size_t param_count(const TreeTopology& topo, size_t bond_dim, size_t num_classes,
                   size_t feature_dim, TensorKind kind, size_t cp_rank);

/// Complex multiplies of one dense contraction as the kernel executes it
/// (legs reduced last-to-first): out * sum over n of prod_{j<=n} in_dims[j].
size_t dense_contract_mul_count(size_t out_dim, std::span<const size_t> in_dims);

/// Complex multiplies of one CP contraction:
/// r * (sum in_dims) + r * (b - 1) + r * out_dim.
size_t cp_contract_mul_count(size_t rank, size_t out_dim,
                             std::span<const size_t> in_dims);

/// Per-image multiply count of a full unmasked forward pass.
size_t forward_mul_count(const TreeTopology& topo, size_t bond_dim, size_t num_classes,
                         size_t feature_dim, TensorKind kind, size_t cp_rank);

} // namespace ttn
