#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ttn/dense_tensor.hpp"
#include "ttn/scalar.hpp"

namespace ttn {

/// Node tensor stored as a rank-r sum of vector outer products:
/// entry (mu, i_1..i_b) = sum_k out[k][mu] * prod_n in[n][k][i_n].
/// Term index k is aligned across the output factor and every leg. Factors
/// are stored term-major per leg, so term k of leg n is a contiguous slice.
class CPTensor {
public:
  CPTensor() = default;
  CPTensor(size_t rank, size_t out_dim, std::vector<size_t> in_dims);

  size_t rank() const { return rank_; }
  size_t out_dim() const { return out_dim_; }
  const std::vector<size_t>& in_dims() const { return in_dims_; }
  size_t order() const { return in_dims_.size(); }

  /// Complex parameters: r * (out_dim + sum of in_dims).
  size_t param_count() const;

  std::span<Complex> out_factor(size_t k) {
    return {out_.data() + k * out_dim_, out_dim_};
  }
  std::span<const Complex> out_factor(size_t k) const {
    return {out_.data() + k * out_dim_, out_dim_};
  }
  std::span<Complex> in_factor(size_t leg, size_t k) {
    return {in_[leg].data() + k * in_dims_[leg], in_dims_[leg]};
  }
  std::span<const Complex> in_factor(size_t leg, size_t k) const {
    return {in_[leg].data() + k * in_dims_[leg], in_dims_[leg]};
  }

  std::span<Complex> out_data() { return out_; }
  std::span<const Complex> out_data() const { return out_; }
  std::span<Complex> in_data(size_t leg) { return in_[leg]; }
  std::span<const Complex> in_data(size_t leg) const { return in_[leg]; }

private:
  size_t rank_ = 0;
  size_t out_dim_ = 0;
  std::vector<size_t> in_dims_;
  std::vector<Complex> out_;             // rank x out_dim, term-major
  std::vector<std::vector<Complex>> in_; // per leg: rank x in_dims[leg]
};

/// Contraction through the factorized form: per-term dot products with the
/// children, then the rank-weighted sum of output factors. Cost
/// O(r * (out_dim + sum in_dims)) instead of materializing the tensor.
void cp_contract(const CPTensor& t, ChildViews children, std::span<Complex> out,
                 std::vector<Complex>& psi_scratch, MulCounter* counter = nullptr);

std::vector<Complex> cp_contract(const CPTensor& t, ChildViews children,
                                 MulCounter* counter = nullptr);
std::vector<Complex> cp_contract(const CPTensor& t,
                                 const std::vector<std::vector<Complex>>& children);

/// Dropout-time contraction: terms with keep[k] == 0 are omitted and the
/// survivors are scaled by keep_scale (1/(1-p)). With all-ones keep and
/// keep_scale == 1.0 the result is bit-identical to cp_contract.
void cp_contract_masked(const CPTensor& t, ChildViews children,
                        std::span<const uint8_t> keep, double keep_scale,
                        std::span<Complex> out, std::vector<Complex>& psi_scratch);

inline constexpr size_t kCpToDenseDefaultCap = size_t{1} << 22;

/// Materialize the factorized tensor. Guarded by an element-count cap so an
/// accidental conversion of a production-sized tensor fails fast.
DenseTensor cp_to_dense(const CPTensor& t, size_t max_elements = kCpToDenseDefaultCap);

/// Exact squared Frobenius norm of the represented tensor, accumulated from
/// factor Gram matrices in O(r^2 * (out_dim + sum in_dims)).
double frobenius_norm_sq(const CPTensor& t);

} // namespace ttn
