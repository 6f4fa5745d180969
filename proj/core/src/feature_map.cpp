#include "ttn/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ttn/errors.hpp"

namespace ttn {

void pixel_feature_map(double x, const FeatureMapSpec& spec, std::span<Complex> out) {
  if (spec.d < 2) throw ConfigError("FeatureMapSpec: d must be >= 2");
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("pixel_feature_map: pixel value " + std::to_string(x) +
                      " outside [0,1]; normalize inputs upstream");
  if (out.size() != spec.d)
    throw ShapeError("pixel_feature_map: output span has wrong length");

  const double c = std::cos(std::numbers::pi * x / 2.0);
  const double s = std::sin(std::numbers::pi * x / 2.0);
  if (spec.d == 2) {
    out[0] = Complex{c, 0.0};
    out[1] = Complex{s, 0.0};
    return;
  }

  // Component s_j (1-based): sqrt(binom(d-1, s_j-1)) c^(d-s_j) s^(s_j-1).
  const size_t d = spec.d;
  double binom = 1.0;
  for (size_t j = 0; j < d; ++j) {
    if (j > 0) binom = binom * static_cast<double>(d - j) / static_cast<double>(j);
    const double value =
        std::sqrt(binom) * std::pow(c, static_cast<double>(d - 1 - j)) *
        std::pow(s, static_cast<double>(j));
    out[j] = Complex{value, 0.0};
  }
}

std::vector<Complex> pixel_feature_map(double x, const FeatureMapSpec& spec) {
  std::vector<Complex> out(spec.d);
  pixel_feature_map(x, spec, out);
  return out;
}

} // namespace ttn
