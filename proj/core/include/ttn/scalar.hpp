#pragma once

#include <cmath>
#include <complex>

namespace ttn {

using Complex = std::complex<double>;

/// Inlined complex multiply. The library-provided operator* routes through
/// __muldc3 for IEEE special-value handling, which dominates the runtime of
/// contraction loops; the kernels use this instead and check finiteness at
/// the tensor/step level.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace ttn
