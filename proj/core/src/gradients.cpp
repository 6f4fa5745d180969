#include "ttn/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttn/errors.hpp"
#include "ttn/forward.hpp"
#include "ttn/parallel.hpp"
#include "ttn/params.hpp"

namespace ttn {

namespace {

// Adjoints are Wirtinger derivatives with respect to the conjugated
// variable; for the real objective the gradient with respect to the real
// and imaginary parts is (2 Re adj, 2 Im adj).
inline void add_adjoint(std::span<double> grad, size_t complex_index, Complex adj) {
  grad[2 * complex_index] += 2.0 * adj.real();
  grad[2 * complex_index + 1] += 2.0 * adj.imag();
}

struct Scratch {
  Workspace ws;
  std::vector<Complex> outer_a, outer_b; // conj child outer product
  std::vector<Complex> bbuf, red;        // dense child-adjoint reductions
  std::vector<Complex> psi, pre, suf, s_k;
};

// Reverse pass through one dense node. Writes parameter adjoints at
// grad[2*offset..) and, when child_adj is given, the adjoint of each child.
void backward_dense(const DenseTensor& t, ChildViews u, std::span<const Complex> gy,
                    std::span<double> grad, size_t offset,
                    std::vector<std::vector<Complex>>* child_adj,
                    std::span<const uint32_t> child_ids, Scratch& s) {
  const size_t b = t.order();
  const size_t out = t.out_dim();
  const size_t vol = t.in_volume();
  const std::vector<size_t>& dims = t.in_dims();

  // K = conj(u_0) x conj(u_1) x ... built progressively.
  s.outer_a.assign(1, Complex{1.0, 0.0});
  std::vector<Complex>* cur = &s.outer_a;
  std::vector<Complex>* nxt = &s.outer_b;
  for (size_t n = 0; n < b; ++n) {
    const size_t len = cur->size();
    nxt->resize(len * dims[n]);
    for (size_t i = 0; i < len; ++i) {
      const Complex base = (*cur)[i];
      for (size_t j = 0; j < dims[n]; ++j)
        (*nxt)[i * dims[n] + j] = cmul(base, std::conj(u[n][j]));
    }
    std::swap(cur, nxt);
  }
  const std::vector<Complex>& K = *cur;

  // Entry adjoint: gy[mu] * K[I].
  for (size_t mu = 0; mu < out; ++mu) {
    const Complex g = gy[mu];
    const size_t row = offset + mu * vol;
    for (size_t i = 0; i < vol; ++i) add_adjoint(grad, row + i, cmul(g, K[i]));
  }

  if (!child_adj) return;

  // B[I] = sum_mu conj(A[mu,I]) gy[mu], then for each leg contract B with
  // the conjugated children on every other leg.
  s.bbuf.assign(vol, Complex{0.0, 0.0});
  const std::span<const Complex> entries = t.entries();
  for (size_t mu = 0; mu < out; ++mu) {
    const Complex g = gy[mu];
    const Complex* base = entries.data() + mu * vol;
    for (size_t i = 0; i < vol; ++i) s.bbuf[i] += cmul(std::conj(base[i]), g);
  }

  for (size_t n = 0; n < b; ++n) {
    std::span<const Complex> src = s.bbuf;
    s.red.resize(vol);
    size_t len = vol;
    // Trailing legs b-1 .. n+1: contiguous dot against conj(u).
    for (size_t m = b; m-- > n + 1;) {
      const size_t dim = dims[m];
      const size_t rows = len / dim;
      for (size_t row = 0; row < rows; ++row) {
        Complex acc{0.0, 0.0};
        const Complex* base = src.data() + row * dim;
        for (size_t i = 0; i < dim; ++i) acc += cmul(base[i], std::conj(u[m][i]));
        s.red[row] = acc;
      }
      len = rows;
      src = std::span<const Complex>(s.red.data(), len);
    }
    // Leading legs 0 .. n-1: strided reduction over the first axis.
    for (size_t m = 0; m < n; ++m) {
      const size_t dim = dims[m];
      const size_t rest = len / dim;
      for (size_t j = 0; j < rest; ++j) {
        Complex acc{0.0, 0.0};
        for (size_t i = 0; i < dim; ++i)
          acc += cmul(src[i * rest + j], std::conj(u[m][i]));
        s.red[j] = acc;
      }
      len = rest;
      src = std::span<const Complex>(s.red.data(), len);
    }
    auto& dst = (*child_adj)[child_ids[n]];
    dst.assign(src.begin(), src.begin() + dims[n]);
  }
}

// Reverse pass through one CP node; keep == nullptr means no mask.
void backward_cp(const CPTensor& t, ChildViews u, std::span<const Complex> gy,
                 std::span<double> grad, size_t offset, const uint8_t* keep,
                 double scale, std::vector<std::vector<Complex>>* child_adj,
                 std::span<const uint32_t> child_ids, Scratch& s) {
  const size_t r = t.rank();
  const size_t b = t.order();
  const size_t out = t.out_dim();

  s.psi.assign(r * b, Complex{0.0, 0.0});
  for (size_t n = 0; n < b; ++n) {
    const size_t dim = t.in_dims()[n];
    const std::span<const Complex> factors = t.in_data(n);
    for (size_t k = 0; k < r; ++k) {
      if (keep && !keep[k]) continue;
      const Complex* base = factors.data() + k * dim;
      Complex acc{0.0, 0.0};
      for (size_t i = 0; i < dim; ++i) acc += cmul(base[i], u[n][i]);
      s.psi[n * r + k] = acc;
    }
  }

  // Exclusive products over legs, per term.
  s.pre.assign(r * b, Complex{1.0, 0.0});
  s.suf.assign(r * b, Complex{1.0, 0.0});
  for (size_t n = 1; n < b; ++n)
    for (size_t k = 0; k < r; ++k)
      s.pre[n * r + k] = cmul(s.pre[(n - 1) * r + k], s.psi[(n - 1) * r + k]);
  for (size_t n = b - 1; n-- > 0;)
    for (size_t k = 0; k < r; ++k)
      s.suf[n * r + k] = cmul(s.suf[(n + 1) * r + k], s.psi[(n + 1) * r + k]);

  // s_k = <gy, conj(out factor k)>.
  s.s_k.assign(r, Complex{0.0, 0.0});
  const std::span<const Complex> of = t.out_data();
  for (size_t k = 0; k < r; ++k) {
    if (keep && !keep[k]) continue;
    const Complex* base = of.data() + k * out;
    Complex acc{0.0, 0.0};
    for (size_t mu = 0; mu < out; ++mu) acc += cmul(gy[mu], std::conj(base[mu]));
    s.s_k[k] = acc;
  }

  // Output-factor adjoints: scale * conj(full product) * gy.
  for (size_t k = 0; k < r; ++k) {
    if (keep && !keep[k]) continue;
    const Complex w = cmul(s.pre[(b - 1) * r + k], s.psi[(b - 1) * r + k]);
    const Complex cw = std::conj(w) * scale;
    const size_t row = offset + k * out;
    for (size_t mu = 0; mu < out; ++mu) add_adjoint(grad, row + mu, cmul(gy[mu], cw));
  }

  if (child_adj)
    for (size_t n = 0; n < b; ++n) {
      auto& dst = (*child_adj)[child_ids[n]];
      dst.assign(t.in_dims()[n], Complex{0.0, 0.0});
    }

  // Leg-factor adjoints share t_nk = scale * s_k * conj(exclusive product)
  // with the child adjoints.
  size_t leg_offset = offset + r * out;
  for (size_t n = 0; n < b; ++n) {
    const size_t dim = t.in_dims()[n];
    const std::span<const Complex> factors = t.in_data(n);
    for (size_t k = 0; k < r; ++k) {
      if (keep && !keep[k]) continue;
      const Complex excl = cmul(s.pre[n * r + k], s.suf[n * r + k]);
      const Complex t_nk = cmul(s.s_k[k], std::conj(excl)) * scale;
      const size_t row = leg_offset + k * dim;
      for (size_t i = 0; i < dim; ++i)
        add_adjoint(grad, row + i, cmul(t_nk, std::conj(u[n][i])));
      if (child_adj) {
        const Complex* base = factors.data() + k * dim;
        auto& dst = (*child_adj)[child_ids[n]];
        for (size_t i = 0; i < dim; ++i) dst[i] += cmul(t_nk, std::conj(base[i]));
      }
    }
    leg_offset += r * dim;
  }
}

// Data-term contribution of one sample: nll, hit, and adjoint accumulation.
void sample_backward(const TTNModel& model, const ParamLayout& layout,
                     std::span<const double> image, uint16_t label,
                     const DropoutMask* mask, double inv_batch,
                     std::span<double> grad, double& nll_acc, size_t& correct,
                     size_t sample_index, Scratch& s) {
  ForwardTrace trace;
  const std::vector<Complex> f = forward(model, image, mask, &trace, &s.ws);

  double norm_sq = 0.0;
  for (const Complex& z : f) norm_sq += std::norm(z);
  if (!(norm_sq >= kBornNormFloor))
    throw DegenerateOutputError("gradients: decision vector collapsed (norm^2 = " +
                                std::to_string(norm_sq) + ") at sample " +
                                std::to_string(sample_index));

  const size_t y = static_cast<size_t>(label) - 1;
  if (y >= f.size())
    throw ConfigError("gradients: label " + std::to_string(label) + " out of range at sample " +
                      std::to_string(sample_index));

  const double py_num = std::norm(f[y]);
  nll_acc += -(std::log(py_num) - std::log(norm_sq));

  size_t best = 0;
  double best_val = std::norm(f[0]);
  for (size_t l = 1; l < f.size(); ++l)
    if (std::norm(f[l]) > best_val) {
      best_val = std::norm(f[l]);
      best = l;
    }
  if (best == y) ++correct;

  // d(-ln p_y)/d conj(f_l) = -delta_{ly} f_y/|f_y|^2 + f_l/||f||^2.
  std::vector<std::vector<Complex>> adj_cur(1);
  adj_cur[0].resize(f.size());
  for (size_t l = 0; l < f.size(); ++l) {
    Complex a = f[l] / norm_sq;
    if (l == y) a -= f[y] / py_num;
    adj_cur[0][l] = a * inv_batch;
  }

  const TreeTopology& topo = model.topology;
  const double scale = mask ? mask->keep_scale() : 1.0;
  std::vector<std::span<const Complex>> child_views;
  std::vector<std::vector<Complex>> adj_next;

  for (size_t tau = topo.layers; tau >= 1; --tau) {
    const auto& layer_children = topo.children[tau - 1];
    const bool has_below = tau > 1;
    if (has_below) {
      adj_next.assign(topo.nodes_in_layer(tau - 1), {});
    }
    for (size_t i = 0; i < layer_children.size(); ++i) {
      const auto& kids = layer_children[i];
      child_views.clear();
      for (uint32_t c : kids)
        child_views.push_back(has_below ? std::span<const Complex>(trace.level[tau - 2][c])
                                        : std::span<const Complex>(trace.leaf[c]));
      const size_t offset = layout.node_offset[tau - 1][i];
      auto* child_adj = has_below ? &adj_next : nullptr;

      if (model.kind == TensorKind::dense) {
        backward_dense(model.dense_nodes[tau - 1][i], ChildViews(child_views),
                       adj_cur[i], grad, offset, child_adj, kids, s);
      } else {
        const bool masked = mask && tau < topo.layers;
        const uint8_t* keep = masked ? mask->keep[tau - 1][i].data() : nullptr;
        backward_cp(model.cp_nodes[tau - 1][i], ChildViews(child_views), adj_cur[i],
                    grad, offset, keep, masked ? scale : 1.0, child_adj, kids, s);
      }
    }
    if (!has_below) break;
    adj_cur = std::move(adj_next);
  }
}

// Gradient of gamma * sum ||A||^2 for one CP node, via factor Gram matrices.
void penalty_cp(const CPTensor& t, double gamma, std::span<double> grad, size_t offset) {
  const size_t r = t.rank();
  const size_t b = t.order();
  const size_t out = t.out_dim();

  // grams[0] is the output-factor Gram, grams[1..b] the legs.
  std::vector<std::vector<Complex>> grams(b + 1, std::vector<Complex>(r * r));
  auto fill_gram = [&](std::span<const Complex> data, size_t dim, std::vector<Complex>& g) {
    for (size_t k = 0; k < r; ++k)
      for (size_t k2 = 0; k2 < r; ++k2) {
        const Complex* a = data.data() + k * dim;
        const Complex* c = data.data() + k2 * dim;
        Complex acc{0.0, 0.0};
        for (size_t i = 0; i < dim; ++i) acc += cmul(std::conj(a[i]), c[i]);
        g[k * r + k2] = acc;
      }
  };
  fill_gram(t.out_data(), out, grams[0]);
  for (size_t n = 0; n < b; ++n) fill_gram(t.in_data(n), t.in_dims()[n], grams[n + 1]);

  // Exclusive elementwise products over the b+1 Gram matrices.
  std::vector<std::vector<Complex>> pre(b + 2), suf(b + 2);
  pre[0].assign(r * r, Complex{1.0, 0.0});
  for (size_t q = 0; q < b + 1; ++q) {
    pre[q + 1].resize(r * r);
    for (size_t e = 0; e < r * r; ++e) pre[q + 1][e] = cmul(pre[q][e], grams[q][e]);
  }
  suf[b + 1].assign(r * r, Complex{1.0, 0.0});
  for (size_t q = b + 1; q-- > 0;) {
    suf[q].resize(r * r);
    for (size_t e = 0; e < r * r; ++e) suf[q][e] = cmul(suf[q + 1][e], grams[q][e]);
  }
  auto exclusive = [&](size_t q, size_t k, size_t k2) {
    return cmul(pre[q][k * r + k2], suf[q + 1][k * r + k2]);
  };

  const std::span<const Complex> of = t.out_data();
  for (size_t k = 0; k < r; ++k)
    for (size_t mu = 0; mu < out; ++mu) {
      Complex acc{0.0, 0.0};
      for (size_t k2 = 0; k2 < r; ++k2)
        acc += cmul(exclusive(0, k, k2), of[k2 * out + mu]);
      add_adjoint(grad, offset + k * out + mu, acc * gamma);
    }

  size_t leg_offset = offset + r * out;
  for (size_t n = 0; n < b; ++n) {
    const size_t dim = t.in_dims()[n];
    const std::span<const Complex> factors = t.in_data(n);
    for (size_t k = 0; k < r; ++k)
      for (size_t i = 0; i < dim; ++i) {
        Complex acc{0.0, 0.0};
        for (size_t k2 = 0; k2 < r; ++k2)
          acc += cmul(exclusive(n + 1, k, k2), factors[k2 * dim + i]);
        add_adjoint(grad, leg_offset + k * dim + i, acc * gamma);
      }
    leg_offset += r * dim;
  }
}

} // namespace

BatchGradient gradients(const TTNModel& model, const ImageSet& data,
                        std::span<const size_t> indices, const DropoutMask* mask,
                        double gamma, size_t stripes, size_t threads) {
  if (indices.empty()) throw UsageError("gradients: empty batch");
  if (mask && model.kind != TensorKind::cp)
    throw UsageError("gradients: dropout mask supplied for a dense model");

  const ParamLayout layout = make_param_layout(model);
  const size_t n_real = 2 * layout.total;
  const size_t n_stripes = std::min(stripes == 0 ? size_t{1} : stripes, indices.size());
  const double inv_batch = 1.0 / static_cast<double>(indices.size());

  std::vector<std::vector<double>> stripe_grad(n_stripes);
  std::vector<double> stripe_nll(n_stripes, 0.0);
  std::vector<size_t> stripe_correct(n_stripes, 0);

  parallel_stripes(n_stripes, threads, [&](size_t sidx) {
    auto& grad = stripe_grad[sidx];
    grad.assign(n_real, 0.0);
    Scratch scratch;
    const size_t lo = indices.size() * sidx / n_stripes;
    const size_t hi = indices.size() * (sidx + 1) / n_stripes;
    for (size_t q = lo; q < hi; ++q) {
      const size_t sample = indices[q];
      sample_backward(model, layout, data.image(sample), data.label(sample), mask,
                      inv_batch, grad, stripe_nll[sidx], stripe_correct[sidx],
                      sample, scratch);
    }
  });

  BatchGradient result;
  result.grad.assign(n_real, 0.0);
  for (size_t sidx = 0; sidx < n_stripes; ++sidx) {
    const auto& g = stripe_grad[sidx];
    for (size_t i = 0; i < n_real; ++i) result.grad[i] += g[i];
    result.nll += stripe_nll[sidx];
    result.correct += stripe_correct[sidx];
  }
  result.nll *= inv_batch;

  if (gamma != 0.0) {
    double norm_total = 0.0;
    for (size_t tau = 1; tau <= model.topology.layers; ++tau)
      for (size_t i = 0; i < model.topology.nodes_in_layer(tau); ++i) {
        const size_t offset = layout.node_offset[tau - 1][i];
        if (model.kind == TensorKind::dense) {
          const DenseTensor& t = model.dense_nodes[tau - 1][i];
          norm_total += frobenius_norm_sq(t);
          const std::span<const Complex> entries = t.entries();
          for (size_t e = 0; e < entries.size(); ++e)
            add_adjoint(result.grad, offset + e, entries[e] * gamma);
        } else {
          const CPTensor& t = model.cp_nodes[tau - 1][i];
          norm_total += frobenius_norm_sq(t);
          penalty_cp(t, gamma, result.grad, offset);
        }
      }
    result.penalty = gamma * norm_total;
  }

  return result;
}

} // namespace ttn
