#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "ttn/errors.hpp"
#include "ttn/forward.hpp"
#include "ttn/train.hpp"

using namespace ttn;

namespace {

std::vector<double> random_image(size_t n, Rng& rng) {
  std::vector<double> img(n);
  for (double& p : img) p = rng.uniform();
  return img;
}

double rel_error(std::span<const Complex> got, std::span<const Complex> want) {
  double diff = 0.0, norm = 0.0;
  for (size_t i = 0; i < got.size(); ++i) {
    diff += std::norm(got[i] - want[i]);
    norm += std::norm(want[i]);
  }
  return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300);
}

} // namespace

TEST_SUITE_BEGIN("forward");

TEST_CASE("pixel_feature_map endpoints and midpoint") {
  const FeatureMapSpec spec{2};
  auto f0 = pixel_feature_map(0.0, spec);
  CHECK(f0[0].real() == doctest::Approx(1.0));
  CHECK(f0[1].real() == doctest::Approx(0.0));

  auto f1 = pixel_feature_map(1.0, spec);
  CHECK(f1[0].real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f1[1].real() == doctest::Approx(1.0));

  auto fh = pixel_feature_map(0.5, spec);
  CHECK(fh[0].real() == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(fh[1].real() == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("pixel_feature_map has unit norm for d in {2,3,4}") {
  Rng rng(31);
  for (size_t d : {size_t{2}, size_t{3}, size_t{4}}) {
    const FeatureMapSpec spec{d};
    for (int trial = 0; trial < 200; ++trial) {
      const auto f = pixel_feature_map(rng.uniform(), spec);
      double norm_sq = 0.0;
      for (const auto& z : f) norm_sq += std::norm(z);
      CHECK(std::abs(norm_sq - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("pixel_feature_map rejects out-of-domain pixels") {
  CHECK_THROWS_AS((void)pixel_feature_map(-0.001, {2}), DomainError);
  CHECK_THROWS_AS((void)pixel_feature_map(1.001, {2}), DomainError);
}

TEST_CASE("forward with an all-zero top tensor returns the zero vector") {
  Rng rng(17);
  auto topo = build_topology(TopologyKind::one_d_b2, 1, 4);
  auto model = initialize_model(topo, TensorKind::dense, 2, 3, {2}, 0, 0.4, rng);
  for (auto& z : model.dense_nodes.back()[0].entries()) z = Complex{0, 0};
  const auto f = forward(model, random_image(4, rng));
  for (const auto& z : f) CHECK(z == Complex{0, 0});
}

TEST_CASE("forward matches the materialized whole-network oracle") {
  Rng rng(23);
  for (TensorKind kind : {TensorKind::dense, TensorKind::cp}) {
    for (size_t n : {size_t{4}, size_t{8}}) {
      for (int trial = 0; trial < 5; ++trial) {
        auto topo = build_topology(TopologyKind::one_d_b2, 1, n);
        const size_t m = 2 + rng.bounded(2); // 2..3
        const size_t r = 1 + rng.bounded(3); // 1..3
        auto model = initialize_model(topo, kind, m, 2, {2}, r, 0.5, rng);
        const auto img = random_image(n, rng);
        const auto fast = forward(model, img);
        const auto ref = oracle::reference_forward(model, img);
        CHECK(rel_error(fast, ref) <= 1e-9);
      }
    }
  }
}

TEST_CASE("forward matches the whole-network oracle at branching 4") {
  Rng rng(53);
  for (TensorKind kind : {TensorKind::dense, TensorKind::cp}) {
    auto topo = build_topology(TopologyKind::two_d_b4, 4, 4);
    auto model = initialize_model(topo, kind, 2, 2, {2}, 2, 0.5, rng);
    const auto img = random_image(16, rng);
    CHECK(rel_error(forward(model, img), oracle::reference_forward(model, img)) <= 1e-9);
  }
}

TEST_CASE("forward matches the oracle on the alternating 2d topology") {
  Rng rng(59);
  auto topo = build_topology(TopologyKind::two_d_b2_alt, 2, 4);
  auto model = initialize_model(topo, TensorKind::cp, 2, 3, {2}, 2, 0.5, rng);
  const auto img = random_image(8, rng);
  CHECK(rel_error(forward(model, img), oracle::reference_forward(model, img)) <= 1e-9);
}

TEST_CASE("forward matches the oracle on a random N=4 cp model") {
  Rng rng(29);
  auto topo = build_topology(TopologyKind::one_d_b2, 1, 4);
  auto model = initialize_model(topo, TensorKind::cp, 2, 2, {2}, 2, 0.5, rng);
  const auto img = random_image(4, rng);
  CHECK(rel_error(forward(model, img), oracle::reference_forward(model, img)) <= 1e-9);
}

TEST_CASE("a p=0 all-ones mask is bit-identical to no mask") {
  Rng rng(37);
  auto topo = build_topology(TopologyKind::two_d_b4, 4, 4);
  auto model = initialize_model(topo, TensorKind::cp, 3, 2, {2}, 4, 0.4, rng);
  Rng mask_rng(1);
  const auto mask = sample_dropout_mask(model, 0.0, mask_rng);
  const auto img = random_image(16, rng);
  const auto without = forward(model, img);
  const auto with = forward(model, img, &mask);
  REQUIRE(without.size() == with.size());
  for (size_t i = 0; i < with.size(); ++i) {
    CHECK(with[i].real() == without[i].real());
    CHECK(with[i].imag() == without[i].imag());
  }
}

TEST_CASE("a mask on a dense model is a usage error") {
  Rng rng(41);
  auto topo = build_topology(TopologyKind::one_d_b2, 1, 4);
  auto model = initialize_model(topo, TensorKind::dense, 2, 2, {2}, 0, 0.4, rng);
  DropoutMask mask;
  mask.keep.resize(topo.layers - 1);
  const auto img = random_image(4, rng);
  CHECK_THROWS_AS((void)forward(model, img, &mask), UsageError);
}

TEST_CASE("born_probabilities basics") {
  const std::vector<Complex> unit{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  const auto p = born_probabilities(unit);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == 0.0);

  const std::vector<Complex> f{Complex{3, 0}, Complex{0, 4}};
  const auto q = born_probabilities(f);
  CHECK(q[0] == doctest::Approx(0.36));
  CHECK(q[1] == doctest::Approx(0.64));
}

TEST_CASE("born_probabilities are scale invariant and normalized") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_vector(5, rng);
    const auto p = born_probabilities(f);
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    std::vector<Complex> scaled(f);
    for (auto& z : scaled) z *= 7.3;
    const auto ps = born_probabilities(scaled);
    for (size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(ps[i]).epsilon(1e-12));
  }
}

TEST_CASE("born_probabilities rejects a collapsed vector") {
  const std::vector<Complex> tiny{Complex{1e-200, 0}, Complex{0, 0}};
  CHECK_THROWS_AS((void)born_probabilities(tiny), DegenerateOutputError);
}

TEST_CASE("predict picks the argmax with 1-indexed classes") {
  CHECK(predict(std::vector<Complex>{{0, 0}, {5, 0}, {0, 0}}) == 2);
  CHECK(predict(std::vector<Complex>{{1, 0}, {1, 0}}) == 1); // tie -> lowest
}

TEST_CASE("predict is invariant under nonzero complex rescaling") {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_vector(4, rng);
    const auto c = Complex{rng.normal(0, 1), rng.normal(0, 1)};
    if (std::abs(c) < 1e-6) continue;
    std::vector<Complex> scaled(f);
    for (auto& z : scaled) z *= c;
    CHECK(predict(f) == predict(scaled));
  }
}

TEST_SUITE_END();
