#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ttn {

/// Supported coarse-graining schemes.
///   one_d_b2      pairs raster-adjacent elements, halving per layer
///   two_d_b2_alt  halves the x (column) direction, then y, alternating
///   two_d_b4      merges disjoint 2x2 patches per layer
enum class TopologyKind { one_d_b2, two_d_b2_alt, two_d_b4 };

TopologyKind topology_kind_from_string(std::string_view s);
std::string to_string(TopologyKind kind);

/// Layered tree over the pixels of one image. Layer tau has N / b^tau
/// nodes; children of layer-1 nodes are pixel indices, children of layer-tau
/// nodes (tau > 1) are node indices within layer tau-1. Node and pixel
/// numbering is raster order.
struct TreeTopology {
  size_t branching = 0; // b
  size_t layers = 0;    // T
  size_t height = 0;
  size_t width = 0;
  TopologyKind kind = TopologyKind::two_d_b4;
  std::vector<std::vector<std::vector<uint32_t>>> children; // [tau-1][node][slot]

  size_t num_pixels() const { return height * width; }
  size_t nodes_in_layer(size_t tau) const { return children[tau - 1].size(); }
  size_t total_nodes() const;

  /// Checks branching >= 2, layer sizes, and exactly-once pixel coverage.
  void validate() const;
};

TreeTopology build_topology(TopologyKind kind, size_t height, size_t width);

} // namespace ttn
