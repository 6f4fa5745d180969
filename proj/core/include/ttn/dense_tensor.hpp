#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttn/scalar.hpp"

namespace ttn {

/// Counts complex multiplies actually executed by a contraction kernel.
/// Passed only from cost-inspection and test paths; the training path runs
/// the uncounted kernels.
struct MulCounter {
  unsigned long long muls = 0;
};

/// Unconstrained node tensor: a linear map from the tensor product of b
/// input spaces into one output space. Entries are row-major with the
/// output index slowest, so contraction streams the child indices innermost.
class DenseTensor {
public:
  DenseTensor() = default;
  DenseTensor(size_t out_dim, std::vector<size_t> in_dims);
  DenseTensor(size_t out_dim, std::vector<size_t> in_dims,
              std::vector<Complex> entries);

  size_t out_dim() const { return out_dim_; }
  const std::vector<size_t>& in_dims() const { return in_dims_; }
  size_t order() const { return in_dims_.size(); }
  size_t in_volume() const { return in_volume_; }
  size_t size() const { return entries_.size(); }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  /// Entry (mu, in_idx[0], ..., in_idx[b-1]); bounds-checked, test/debug use.
  Complex at(size_t mu, std::span<const size_t> in_idx) const;

private:
  size_t out_dim_ = 0;
  size_t in_volume_ = 1;
  std::vector<size_t> in_dims_;
  std::vector<Complex> entries_;
};

using ChildViews = std::span<const std::span<const Complex>>;

/// Multilinear contraction of all child vectors: out[mu] = sum over joint
/// input index of entry * product of child components. Children are reduced
/// from the last leg inward; `scratch` is resized as needed and reused.
void dense_contract(const DenseTensor& t, ChildViews children,
                    std::span<Complex> out, std::vector<Complex>& scratch,
                    MulCounter* counter = nullptr);

std::vector<Complex> dense_contract(const DenseTensor& t, ChildViews children,
                                    MulCounter* counter = nullptr);
std::vector<Complex> dense_contract(const DenseTensor& t,
                                    const std::vector<std::vector<Complex>>& children);

double frobenius_norm_sq(const DenseTensor& t);

} // namespace ttn
