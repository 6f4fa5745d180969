#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttn/scalar.hpp"

namespace ttn {

/// Local embedding of one pixel value into C^d. d = 2 gives
/// (cos(pi x / 2), sin(pi x / 2)); larger d uses the binomially weighted
/// powers of the same pair, so the output has unit norm for every d.
struct FeatureMapSpec {
  size_t d = 2;
};

void pixel_feature_map(double x, const FeatureMapSpec& spec, std::span<Complex> out);
std::vector<Complex> pixel_feature_map(double x, const FeatureMapSpec& spec);

} // namespace ttn
