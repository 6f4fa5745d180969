#include "ttn/dense_tensor.hpp"

#include <string>

#include "ttn/errors.hpp"

namespace ttn {

namespace {

size_t checked_volume(size_t out_dim, const std::vector<size_t>& in_dims) {
  if (out_dim == 0) throw ShapeError("DenseTensor: out_dim must be positive");
  if (in_dims.empty()) throw ShapeError("DenseTensor: at least one input leg required");
  size_t vol = 1;
  for (size_t n = 0; n < in_dims.size(); ++n) {
    if (in_dims[n] == 0)
      throw ShapeError("DenseTensor: in_dims[" + std::to_string(n) + "] must be positive");
    vol *= in_dims[n];
  }
  return vol;
}

void check_children(const std::vector<size_t>& in_dims, ChildViews children,
                    const char* who) {
  if (children.size() != in_dims.size())
    throw ShapeError(std::string(who) + ": got " + std::to_string(children.size()) +
                     " children, expected " + std::to_string(in_dims.size()));
  for (size_t n = 0; n < in_dims.size(); ++n) {
    if (children[n].size() != in_dims[n])
      throw ShapeError(std::string(who) + ": child " + std::to_string(n) +
                       " has length " + std::to_string(children[n].size()) +
                       ", expected in_dims[" + std::to_string(n) +
                       "] = " + std::to_string(in_dims[n]));
  }
}

} // namespace

DenseTensor::DenseTensor(size_t out_dim, std::vector<size_t> in_dims)
    : out_dim_(out_dim),
      in_volume_(checked_volume(out_dim, in_dims)),
      in_dims_(std::move(in_dims)),
      entries_(out_dim_ * in_volume_) {}

DenseTensor::DenseTensor(size_t out_dim, std::vector<size_t> in_dims,
                         std::vector<Complex> entries)
    : out_dim_(out_dim),
      in_volume_(checked_volume(out_dim, in_dims)),
      in_dims_(std::move(in_dims)),
      entries_(std::move(entries)) {
  if (entries_.size() != out_dim_ * in_volume_)
    throw ShapeError("DenseTensor: entries length " + std::to_string(entries_.size()) +
                     " does not match out_dim * prod(in_dims) = " +
                     std::to_string(out_dim_ * in_volume_));
  for (const Complex& z : entries_)
    if (!is_finite(z)) throw DomainError("DenseTensor: non-finite entry");
}

Complex DenseTensor::at(size_t mu, std::span<const size_t> in_idx) const {
  if (mu >= out_dim_ || in_idx.size() != in_dims_.size())
    throw ShapeError("DenseTensor::at: index out of range");
  size_t flat = mu;
  for (size_t n = 0; n < in_idx.size(); ++n) {
    if (in_idx[n] >= in_dims_[n]) throw ShapeError("DenseTensor::at: index out of range");
    flat = flat * in_dims_[n] + in_idx[n];
  }
  return entries_[flat];
}

void dense_contract(const DenseTensor& t, ChildViews children,
                    std::span<Complex> out, std::vector<Complex>& scratch,
                    MulCounter* counter) {
  check_children(t.in_dims(), children, "dense_contract");
  if (out.size() != t.out_dim())
    throw ShapeError("dense_contract: output span has length " +
                     std::to_string(out.size()) + ", expected " +
                     std::to_string(t.out_dim()));

  const size_t b = t.order();
  // Reduce the last leg first: rows of the current buffer are contiguous
  // slices of length in_dims[n], dotted against child n.
  size_t rows = t.size() / t.in_dims()[b - 1];
  scratch.resize(rows);
  unsigned long long muls = 0;

  std::span<const Complex> src = t.entries();
  for (size_t n = b; n-- > 0;) {
    const std::span<const Complex> child = children[n];
    const size_t dim = t.in_dims()[n];
    rows = src.size() / dim;
    for (size_t row = 0; row < rows; ++row) {
      const Complex* base = src.data() + row * dim;
      Complex acc{0.0, 0.0};
      for (size_t i = 0; i < dim; ++i) acc += cmul(base[i], child[i]);
      scratch[row] = acc;
    }
    if (counter) muls += rows * dim;
    src = std::span<const Complex>(scratch.data(), rows);
  }

  for (size_t mu = 0; mu < t.out_dim(); ++mu) out[mu] = scratch[mu];
  if (counter) counter->muls += muls;
}

std::vector<Complex> dense_contract(const DenseTensor& t, ChildViews children,
                                    MulCounter* counter) {
  std::vector<Complex> out(t.out_dim());
  std::vector<Complex> scratch;
  dense_contract(t, children, out, scratch, counter);
  return out;
}

std::vector<Complex> dense_contract(const DenseTensor& t,
                                    const std::vector<std::vector<Complex>>& children) {
  std::vector<std::span<const Complex>> views(children.begin(), children.end());
  return dense_contract(t, ChildViews(views));
}

double frobenius_norm_sq(const DenseTensor& t) {
  double acc = 0.0;
  for (const Complex& z : t.entries()) acc += std::norm(z);
  return acc;
}

} // namespace ttn
