#include "ttn/topology.hpp"

#include <bit>

#include "ttn/errors.hpp"

namespace ttn {

namespace {

bool is_pow2(size_t n) { return n != 0 && std::has_single_bit(n); }

// Grid of node ids carried between layers while building.
struct Grid {
  size_t h = 0, w = 0;
  std::vector<uint32_t> ids; // raster order

  uint32_t at(size_t r, size_t c) const { return ids[r * w + c]; }
};

Grid pixel_grid(size_t height, size_t width) {
  Grid g{height, width, {}};
  g.ids.resize(height * width);
  for (size_t i = 0; i < g.ids.size(); ++i) g.ids[i] = static_cast<uint32_t>(i);
  return g;
}

} // namespace

TopologyKind topology_kind_from_string(std::string_view s) {
  if (s == "1d-b2") return TopologyKind::one_d_b2;
  if (s == "2d-b2-alternating") return TopologyKind::two_d_b2_alt;
  if (s == "2d-b4") return TopologyKind::two_d_b4;
  throw ConfigError("unknown topology kind '" + std::string(s) +
                    "' (expected 1d-b2, 2d-b2-alternating, or 2d-b4)");
}

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::one_d_b2: return "1d-b2";
    case TopologyKind::two_d_b2_alt: return "2d-b2-alternating";
    case TopologyKind::two_d_b4: return "2d-b4";
  }
  return "?";
}

size_t TreeTopology::total_nodes() const {
  size_t n = 0;
  for (const auto& layer : children) n += layer.size();
  return n;
}

void TreeTopology::validate() const {
  if (branching < 2) throw ConfigError("TreeTopology: branching must be >= 2");
  if (layers == 0 || children.size() != layers)
    throw ConfigError("TreeTopology: layer count mismatch");
  if (children.back().size() != 1)
    throw ConfigError("TreeTopology: top layer must have exactly one node");

  std::vector<uint8_t> seen(num_pixels(), 0);
  size_t prev_nodes = num_pixels();
  for (size_t tau = 1; tau <= layers; ++tau) {
    const auto& layer = children[tau - 1];
    for (const auto& node : layer) {
      if (node.size() != branching)
        throw ConfigError("TreeTopology: node with wrong child count");
      for (uint32_t c : node) {
        if (c >= prev_nodes)
          throw ConfigError("TreeTopology: child index out of range");
        if (tau == 1) {
          if (seen[c]++)
            throw ConfigError("TreeTopology: pixel " + std::to_string(c) +
                              " appears as a leaf more than once");
        }
      }
    }
    prev_nodes = layer.size();
  }
  for (size_t p = 0; p < seen.size(); ++p)
    if (!seen[p])
      throw ConfigError("TreeTopology: pixel " + std::to_string(p) + " is not covered");
}

TreeTopology build_topology(TopologyKind kind, size_t height, size_t width) {
  const size_t n = height * width;
  if (height == 0 || width == 0) throw ConfigError("build_topology: empty image shape");

  TreeTopology topo;
  topo.height = height;
  topo.width = width;
  topo.kind = kind;

  switch (kind) {
    case TopologyKind::one_d_b2: {
      if (!is_pow2(n))
        throw ConfigError("1d-b2 requires a pixel count that is a power of two, got " +
                          std::to_string(n));
      if (n < 2) throw ConfigError("1d-b2 requires at least 2 pixels");
      topo.branching = 2;
      size_t count = n;
      while (count > 1) {
        std::vector<std::vector<uint32_t>> layer(count / 2);
        for (size_t i = 0; i < layer.size(); ++i) {
          // At layer 1 these are flattened raster pixel indices.
          layer[i] = {static_cast<uint32_t>(2 * i), static_cast<uint32_t>(2 * i + 1)};
        }
        topo.children.push_back(std::move(layer));
        count /= 2;
      }
      break;
    }
    case TopologyKind::two_d_b2_alt: {
      if (!is_pow2(height) || !is_pow2(width))
        throw ConfigError("2d-b2-alternating requires power-of-two height and width, got " +
                          std::to_string(height) + "x" + std::to_string(width));
      if (n < 2) throw ConfigError("2d-b2-alternating requires at least 2 pixels");
      topo.branching = 2;
      Grid grid = pixel_grid(height, width);
      bool x_step = true; // coarse-grain x (columns) first
      while (grid.h * grid.w > 1) {
        const bool do_x = (x_step && grid.w > 1) || grid.h == 1;
        Grid next;
        std::vector<std::vector<uint32_t>> layer;
        if (do_x) {
          next.h = grid.h;
          next.w = grid.w / 2;
          layer.resize(next.h * next.w);
          for (size_t r = 0; r < next.h; ++r)
            for (size_t c = 0; c < next.w; ++c)
              layer[r * next.w + c] = {grid.at(r, 2 * c), grid.at(r, 2 * c + 1)};
        } else {
          next.h = grid.h / 2;
          next.w = grid.w;
          layer.resize(next.h * next.w);
          for (size_t r = 0; r < next.h; ++r)
            for (size_t c = 0; c < next.w; ++c)
              layer[r * next.w + c] = {grid.at(2 * r, c), grid.at(2 * r + 1, c)};
        }
        next.ids.resize(layer.size());
        for (size_t i = 0; i < layer.size(); ++i) next.ids[i] = static_cast<uint32_t>(i);
        topo.children.push_back(std::move(layer));
        grid = std::move(next);
        x_step = !x_step;
      }
      break;
    }
    case TopologyKind::two_d_b4: {
      if (height != width || !is_pow2(height))
        throw ConfigError("2d-b4 requires a square image with power-of-two side, got " +
                          std::to_string(height) + "x" + std::to_string(width));
      if (height < 2) throw ConfigError("2d-b4 requires at least a 2x2 image");
      topo.branching = 4;
      Grid grid = pixel_grid(height, width);
      while (grid.h > 1) {
        Grid next;
        next.h = grid.h / 2;
        next.w = grid.w / 2;
        std::vector<std::vector<uint32_t>> layer(next.h * next.w);
        for (size_t r = 0; r < next.h; ++r)
          for (size_t c = 0; c < next.w; ++c) {
            // Raster order within the 2x2 patch.
            layer[r * next.w + c] = {grid.at(2 * r, 2 * c), grid.at(2 * r, 2 * c + 1),
                                     grid.at(2 * r + 1, 2 * c), grid.at(2 * r + 1, 2 * c + 1)};
          }
        next.ids.resize(layer.size());
        for (size_t i = 0; i < layer.size(); ++i) next.ids[i] = static_cast<uint32_t>(i);
        topo.children.push_back(std::move(layer));
        grid = std::move(next);
      }
      break;
    }
  }

  topo.layers = topo.children.size();
  topo.validate();
  return topo;
}

} // namespace ttn
