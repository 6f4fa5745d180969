#include "ttn/forward.hpp"

#include <string>

#include "ttn/errors.hpp"

namespace ttn {

std::vector<Complex> forward(const TTNModel& model, std::span<const double> image,
                             const DropoutMask* mask, ForwardTrace* trace,
                             Workspace* ws, MulCounter* counter) {
  const TreeTopology& topo = model.topology;
  if (image.size() != topo.num_pixels())
    throw ShapeError("forward: image has " + std::to_string(image.size()) +
                     " pixels, topology expects " + std::to_string(topo.num_pixels()));
  if (mask) {
    if (model.kind != TensorKind::cp)
      throw UsageError("forward: dropout mask supplied for a dense model");
    if (mask->keep.size() + 1 != topo.layers)
      throw ShapeError("forward: mask layer count does not match model");
  }

  Workspace local;
  Workspace& w = ws ? *ws : local;

  // Pixel embeddings.
  const size_t d = model.feature_map.d;
  std::vector<std::vector<Complex>> leaf(topo.num_pixels());
  for (size_t p = 0; p < leaf.size(); ++p) {
    leaf[p].resize(d);
    pixel_feature_map(image[p], model.feature_map, leaf[p]);
  }

  std::vector<std::vector<Complex>> prev = std::move(leaf);
  if (trace) trace->leaf = prev;
  if (trace) trace->level.assign(topo.layers, {});

  const double keep_scale = mask ? mask->keep_scale() : 1.0;

  for (size_t tau = 1; tau <= topo.layers; ++tau) {
    const auto& layer_children = topo.children[tau - 1];
    const size_t count = layer_children.size();
    const size_t out_dim = (tau == topo.layers) ? model.num_classes : model.bond_dim;
    std::vector<std::vector<Complex>> cur(count);

    for (size_t i = 0; i < count; ++i) {
      const auto& kids = layer_children[i];
      w.child_views.clear();
      for (uint32_t c : kids) w.child_views.push_back(prev[c]);
      cur[i].resize(out_dim);

      if (model.kind == TensorKind::dense) {
        dense_contract(model.dense_nodes[tau - 1][i], ChildViews(w.child_views),
                       cur[i], w.scratch, counter);
      } else {
        const CPTensor& t = model.cp_nodes[tau - 1][i];
        const bool masked = mask && tau < topo.layers;
        if (masked) {
          cp_contract_masked(t, ChildViews(w.child_views), mask->keep[tau - 1][i],
                             keep_scale, cur[i], w.psi);
        } else {
          cp_contract(t, ChildViews(w.child_views), cur[i], w.psi, counter);
        }
      }
    }

    if (trace) trace->level[tau - 1] = cur;
    prev = std::move(cur);
  }

  return std::move(prev[0]);
}

std::vector<double> born_probabilities(std::span<const Complex> f) {
  double norm_sq = 0.0;
  for (const Complex& z : f) norm_sq += std::norm(z);
  if (!(norm_sq >= kBornNormFloor))
    throw DegenerateOutputError(
        "born_probabilities: decision vector norm^2 = " + std::to_string(norm_sq) +
        " below floor; training likely diverged");
  std::vector<double> p(f.size());
  for (size_t l = 0; l < f.size(); ++l) p[l] = std::norm(f[l]) / norm_sq;
  return p;
}

size_t predict(std::span<const Complex> f) {
  double norm_sq = 0.0;
  for (const Complex& z : f) norm_sq += std::norm(z);
  if (!(norm_sq >= kBornNormFloor))
    throw DegenerateOutputError("predict: decision vector norm below floor");
  size_t best = 0;
  double best_val = std::norm(f[0]);
  for (size_t l = 1; l < f.size(); ++l) {
    const double v = std::norm(f[l]);
    if (v > best_val) {
      best_val = v;
      best = l;
    }
  }
  return best + 1;
}

} // namespace ttn
