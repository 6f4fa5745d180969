#include "ttn/params.hpp"

#include "ttn/errors.hpp"

namespace ttn {

namespace {

size_t node_param_count(const TTNModel& model, size_t tau, size_t i) {
  if (model.kind == TensorKind::dense) return model.dense_nodes[tau - 1][i].size();
  return model.cp_nodes[tau - 1][i].param_count();
}

template <typename Fn>
void for_each_node_span(TTNModel& model, Fn&& fn) {
  // Visits every complex-parameter block in canonical order.
  for (size_t tau = 1; tau <= model.topology.layers; ++tau) {
    const size_t count = model.topology.nodes_in_layer(tau);
    for (size_t i = 0; i < count; ++i) {
      if (model.kind == TensorKind::dense) {
        fn(model.dense_nodes[tau - 1][i].entries());
      } else {
        CPTensor& t = model.cp_nodes[tau - 1][i];
        fn(t.out_data());
        for (size_t n = 0; n < t.order(); ++n) fn(t.in_data(n));
      }
    }
  }
}

} // namespace

ParamLayout make_param_layout(const TTNModel& model) {
  ParamLayout layout;
  layout.node_offset.resize(model.topology.layers);
  size_t offset = 0;
  for (size_t tau = 1; tau <= model.topology.layers; ++tau) {
    const size_t count = model.topology.nodes_in_layer(tau);
    layout.node_offset[tau - 1].resize(count);
    for (size_t i = 0; i < count; ++i) {
      layout.node_offset[tau - 1][i] = offset;
      offset += node_param_count(model, tau, i);
    }
  }
  layout.total = offset;
  return layout;
}

size_t model_param_count(const TTNModel& model) {
  size_t total = 0;
  for (size_t tau = 1; tau <= model.topology.layers; ++tau)
    for (size_t i = 0; i < model.topology.nodes_in_layer(tau); ++i)
      total += node_param_count(model, tau, i);
  return total;
}

std::vector<double> export_params(const TTNModel& model) {
  std::vector<double> flat;
  flat.reserve(2 * model_param_count(model));
  for_each_node_span(const_cast<TTNModel&>(model), [&](std::span<Complex> block) {
    for (const Complex& z : block) {
      flat.push_back(z.real());
      flat.push_back(z.imag());
    }
  });
  return flat;
}

void import_params(TTNModel& model, std::span<const double> flat) {
  if (flat.size() != 2 * model_param_count(model))
    throw ShapeError("import_params: expected " +
                     std::to_string(2 * model_param_count(model)) + " reals, got " +
                     std::to_string(flat.size()));
  size_t pos = 0;
  for_each_node_span(model, [&](std::span<Complex> block) {
    for (Complex& z : block) {
      z = Complex{flat[pos], flat[pos + 1]};
      pos += 2;
    }
  });
}

} // namespace ttn
