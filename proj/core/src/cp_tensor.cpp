#include "ttn/cp_tensor.hpp"

#include <string>

#include "ttn/errors.hpp"

namespace ttn {

namespace {

void check_children(const std::vector<size_t>& in_dims, ChildViews children) {
  if (children.size() != in_dims.size())
    throw ShapeError("cp_contract: got " + std::to_string(children.size()) +
                     " children, expected " + std::to_string(in_dims.size()));
  for (size_t n = 0; n < in_dims.size(); ++n) {
    if (children[n].size() != in_dims[n])
      throw ShapeError("cp_contract: child " + std::to_string(n) + " has length " +
                       std::to_string(children[n].size()) + ", expected in_dims[" +
                       std::to_string(n) + "] = " + std::to_string(in_dims[n]));
  }
}

} // namespace

CPTensor::CPTensor(size_t rank, size_t out_dim, std::vector<size_t> in_dims)
    : rank_(rank), out_dim_(out_dim), in_dims_(std::move(in_dims)) {
  if (rank_ == 0) throw ShapeError("CPTensor: rank must be >= 1");
  if (out_dim_ == 0) throw ShapeError("CPTensor: out_dim must be positive");
  if (in_dims_.empty()) throw ShapeError("CPTensor: at least one input leg required");
  for (size_t n = 0; n < in_dims_.size(); ++n)
    if (in_dims_[n] == 0)
      throw ShapeError("CPTensor: in_dims[" + std::to_string(n) + "] must be positive");
  out_.assign(rank_ * out_dim_, Complex{});
  in_.resize(in_dims_.size());
  for (size_t n = 0; n < in_dims_.size(); ++n)
    in_[n].assign(rank_ * in_dims_[n], Complex{});
}

size_t CPTensor::param_count() const {
  size_t per_term = out_dim_;
  for (size_t d : in_dims_) per_term += d;
  return rank_ * per_term;
}

void cp_contract(const CPTensor& t, ChildViews children, std::span<Complex> out,
                 std::vector<Complex>& psi_scratch, MulCounter* counter) {
  check_children(t.in_dims(), children);
  if (out.size() != t.out_dim())
    throw ShapeError("cp_contract: output span has length " + std::to_string(out.size()) +
                     ", expected " + std::to_string(t.out_dim()));

  const size_t r = t.rank();
  const size_t b = t.order();
  psi_scratch.resize(r * b);
  unsigned long long muls = 0;

  // psi[n*r + k] = <leg-n factor of term k, child n> (plain bilinear dot).
  for (size_t n = 0; n < b; ++n) {
    const size_t dim = t.in_dims()[n];
    const std::span<const Complex> child = children[n];
    const std::span<const Complex> factors = t.in_data(n);
    for (size_t k = 0; k < r; ++k) {
      const Complex* base = factors.data() + k * dim;
      Complex acc{0.0, 0.0};
      for (size_t i = 0; i < dim; ++i) acc += cmul(base[i], child[i]);
      psi_scratch[n * r + k] = acc;
    }
    if (counter) muls += r * dim;
  }

  for (Complex& z : out) z = Complex{0.0, 0.0};
  const std::span<const Complex> out_factors = t.out_data();
  const size_t out_dim = t.out_dim();
  for (size_t k = 0; k < r; ++k) {
    Complex w = psi_scratch[k];
    for (size_t n = 1; n < b; ++n) w = cmul(w, psi_scratch[n * r + k]);
    if (counter) muls += b - 1;
    const Complex* of = out_factors.data() + k * out_dim;
    for (size_t mu = 0; mu < out_dim; ++mu) out[mu] += cmul(w, of[mu]);
    if (counter) muls += out_dim;
  }
  if (counter) counter->muls += muls;
}

std::vector<Complex> cp_contract(const CPTensor& t, ChildViews children,
                                 MulCounter* counter) {
  std::vector<Complex> out(t.out_dim());
  std::vector<Complex> psi;
  cp_contract(t, children, out, psi, counter);
  return out;
}

std::vector<Complex> cp_contract(const CPTensor& t,
                                 const std::vector<std::vector<Complex>>& children) {
  std::vector<std::span<const Complex>> views(children.begin(), children.end());
  return cp_contract(t, ChildViews(views));
}

void cp_contract_masked(const CPTensor& t, ChildViews children,
                        std::span<const uint8_t> keep, double keep_scale,
                        std::span<Complex> out, std::vector<Complex>& psi_scratch) {
  check_children(t.in_dims(), children);
  if (keep.size() != t.rank())
    throw ShapeError("cp_contract_masked: keep has length " + std::to_string(keep.size()) +
                     ", expected rank " + std::to_string(t.rank()));
  if (out.size() != t.out_dim())
    throw ShapeError("cp_contract_masked: output span has length " +
                     std::to_string(out.size()) + ", expected " +
                     std::to_string(t.out_dim()));

  const size_t r = t.rank();
  const size_t b = t.order();
  psi_scratch.resize(r * b);

  for (size_t n = 0; n < b; ++n) {
    const size_t dim = t.in_dims()[n];
    const std::span<const Complex> child = children[n];
    const std::span<const Complex> factors = t.in_data(n);
    for (size_t k = 0; k < r; ++k) {
      if (!keep[k]) continue;
      const Complex* base = factors.data() + k * dim;
      Complex acc{0.0, 0.0};
      for (size_t i = 0; i < dim; ++i) acc += cmul(base[i], child[i]);
      psi_scratch[n * r + k] = acc;
    }
  }

  for (Complex& z : out) z = Complex{0.0, 0.0};
  const std::span<const Complex> out_factors = t.out_data();
  const size_t out_dim = t.out_dim();
  for (size_t k = 0; k < r; ++k) {
    if (!keep[k]) continue;
    Complex w = psi_scratch[k];
    for (size_t n = 1; n < b; ++n) w = cmul(w, psi_scratch[n * r + k]);
    w *= keep_scale;
    const Complex* of = out_factors.data() + k * out_dim;
    for (size_t mu = 0; mu < out_dim; ++mu) out[mu] += cmul(w, of[mu]);
  }
}

DenseTensor cp_to_dense(const CPTensor& t, size_t max_elements) {
  size_t volume = t.out_dim();
  for (size_t d : t.in_dims()) volume *= d;
  if (volume > max_elements)
    throw CapacityError("cp_to_dense: materialization needs " + std::to_string(volume) +
                        " elements, cap is " + std::to_string(max_elements));

  const size_t b = t.order();
  const size_t in_vol = volume / t.out_dim();
  std::vector<Complex> entries(volume, Complex{});
  std::vector<size_t> idx(b);

  for (size_t k = 0; k < t.rank(); ++k) {
    for (size_t flat = 0; flat < in_vol; ++flat) {
      size_t rem = flat;
      for (size_t n = b; n-- > 0;) {
        idx[n] = rem % t.in_dims()[n];
        rem /= t.in_dims()[n];
      }
      Complex prod{1.0, 0.0};
      for (size_t n = 0; n < b; ++n) prod = cmul(prod, t.in_factor(n, k)[idx[n]]);
      const std::span<const Complex> of = t.out_factor(k);
      for (size_t mu = 0; mu < t.out_dim(); ++mu)
        entries[mu * in_vol + flat] += cmul(of[mu], prod);
    }
  }
  return DenseTensor(t.out_dim(), t.in_dims(), std::move(entries));
}

double frobenius_norm_sq(const CPTensor& t) {
  const size_t r = t.rank();
  const size_t b = t.order();

  // gram[k*r + k2] accumulates <term k, term k2> over the output factor and
  // every leg; the total is the sum over all pairs and is real.
  std::vector<Complex> gram(r * r);
  auto accumulate_leg = [&](std::span<const Complex> data, size_t dim, bool first) {
    for (size_t k = 0; k < r; ++k) {
      const Complex* a = data.data() + k * dim;
      for (size_t k2 = 0; k2 < r; ++k2) {
        const Complex* c = data.data() + k2 * dim;
        Complex acc{0.0, 0.0};
        for (size_t i = 0; i < dim; ++i) acc += cmul(std::conj(a[i]), c[i]);
        if (first)
          gram[k * r + k2] = acc;
        else
          gram[k * r + k2] = cmul(gram[k * r + k2], acc);
      }
    }
  };

  accumulate_leg(t.out_data(), t.out_dim(), true);
  for (size_t n = 0; n < b; ++n) accumulate_leg(t.in_data(n), t.in_dims()[n], false);

  Complex total{0.0, 0.0};
  for (const Complex& z : gram) total += z;
  return total.real();
}

} // namespace ttn
