// Acceptance suite: one criterion per invocation, one PASS/FAIL/SKIP line on
// stdout. Exit codes: 0 pass, 1 fail, 77 skipped (dataset not available).
//
// Criteria 1-3 and 10 are self-contained numerical checks. Criteria 4-9 and
// 11 drive the ttn binary end to end on MNIST / Fashion-MNIST and need the
// IDX files under --data-dir (or $TTN_DATA_DIR); they skip cleanly when the
// files are absent. Criteria 5 and 6 are the long full-scale benchmarks.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "run_config.hpp"
#include "ttn/costs.hpp"
#include "ttn/errors.hpp"
#include "ttn/forward.hpp"
#include "ttn/gradients.hpp"
#include "ttn/train.hpp"

#ifndef TTN_CLI_PATH
#error "TTN_CLI_PATH must point at the ttn binary"
#endif

namespace fs = std::filesystem;
using namespace ttn;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kSkip = 77;

struct Context {
  fs::path data_dir;
  fs::path work_dir = "/tmp/ttn_acceptance";
  size_t threads = 0;
};

int report(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << (pass ? " PASS: " : " FAIL: ") << detail
            << std::endl;
  return pass ? kPass : kFail;
}

int skip(int criterion, const std::string& reason) {
  std::cout << "criterion " << criterion << " SKIP: " << reason << std::endl;
  return kSkip;
}

bool dataset_present(const Context& ctx, const std::string& name) {
  if (ctx.data_dir.empty()) return false;
  try {
    (void)cli::find_idx_file(ctx.data_dir / name, "train-images-idx3-ubyte");
    (void)cli::find_idx_file(ctx.data_dir / name, "train-labels-idx1-ubyte");
    (void)cli::find_idx_file(ctx.data_dir / name, "t10k-images-idx3-ubyte");
    (void)cli::find_idx_file(ctx.data_dir / name, "t10k-labels-idx1-ubyte");
    return true;
  } catch (const Error&) {
    return false;
  }
}

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

CmdResult run_cli(const Context& ctx, const std::string& args, const std::string& tag) {
  fs::create_directories(ctx.work_dir);
  const fs::path log = ctx.work_dir / (tag + ".log");
  const std::string cmd = std::string(TTN_CLI_PATH) + " " + args + " > " + log.string() +
                          " 2>&1";
  std::cerr << "[acceptance] running: " << cmd << std::endl;
  const int rc = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

double parse_after(const std::string& text, const std::string& needle) {
  const size_t pos = text.find(needle);
  if (pos == std::string::npos)
    throw Error("expected '" + needle + "' in command output");
  return std::stod(text.substr(pos + needle.size()));
}

std::string train_args(const Context& ctx, const std::string& dataset,
                       const fs::path& out_dir, const std::string& extra) {
  return "train --dataset " + dataset + " --data-dir " + ctx.data_dir.string() +
         " --out-dir " + out_dir.string() + " --threads " +
         std::to_string(ctx.threads) + " " + extra;
}

std::vector<std::string> metrics_rows_without_wall(const fs::path& metrics) {
  std::ifstream in(metrics);
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    const size_t comma = line.rfind(',');
    rows.push_back(line.substr(0, comma));
  }
  return rows;
}

double last_column_value(const fs::path& metrics, size_t column) {
  std::ifstream in(metrics);
  std::string line, last;
  std::getline(in, line); // header
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) throw Error("metrics file has no rows: " + metrics.string());
  std::stringstream ss(last);
  std::string field;
  for (size_t i = 0; i <= column; ++i) std::getline(ss, field, ',');
  return std::stod(field);
}

// ---------------------------------------------------------------------------
// criterion 1: contraction + whole-network oracle equivalence
// ---------------------------------------------------------------------------

int criterion_1() {
  Rng rng(20240201);
  double worst_abs = 0.0;
  for (int trial = 0; trial < 220; ++trial) {
    const size_t b = 1 + rng.bounded(3);
    std::vector<size_t> in_dims(b);
    for (auto& d : in_dims) d = 1 + rng.bounded(4);
    const size_t out = 1 + rng.bounded(4);
    const size_t r = 1 + rng.bounded(4);
    const CPTensor t = oracle::random_cp(r, out, in_dims, rng);
    std::vector<std::vector<Complex>> children;
    for (size_t d : in_dims) children.push_back(oracle::random_vector(d, rng));
    const auto fast = cp_contract(t, children);
    const auto ref =
        oracle::reference_dense_contract(oracle::reference_cp_to_dense(t), children);
    for (size_t i = 0; i < fast.size(); ++i)
      worst_abs = std::max(worst_abs, std::abs(fast[i] - ref[i]));
  }
  if (worst_abs > 1e-10)
    return report(1, false, "cp_contract deviates from the dense oracle by " +
                                std::to_string(worst_abs));

  double worst_rel = 0.0;
  for (TensorKind kind : {TensorKind::dense, TensorKind::cp}) {
    for (size_t n : {size_t{4}, size_t{8}}) {
      for (int trial = 0; trial < 8; ++trial) {
        auto topo = build_topology(TopologyKind::one_d_b2, 1, n);
        auto model = initialize_model(topo, kind, 2 + rng.bounded(2), 2, {2},
                                      1 + rng.bounded(3), 0.5, rng);
        std::vector<double> image(n);
        for (double& p : image) p = rng.uniform();
        const auto fast = forward(model, image);
        const auto ref = oracle::reference_forward(model, image);
        double diff = 0.0, norm = 0.0;
        for (size_t i = 0; i < fast.size(); ++i) {
          diff += std::norm(fast[i] - ref[i]);
          norm += std::norm(ref[i]);
        }
        worst_rel = std::max(worst_rel, std::sqrt(diff / norm));
      }
    }
  }
  if (worst_rel > 1e-9)
    return report(1, false,
                  "whole-network forward deviates by relative " + std::to_string(worst_rel));
  return report(1, true,
                "220 cp-vs-dense contractions <= 1e-10 abs; 32 whole-network forwards <= "
                "1e-9 rel (worst " +
                    std::to_string(worst_rel) + ")");
}

// ---------------------------------------------------------------------------
// criterion 2: analytic gradients vs central finite differences
// ---------------------------------------------------------------------------

int criterion_2() {
  Rng rng(20240202);
  struct Combo {
    TensorKind kind;
    bool mask;
    double gamma;
  };
  const std::vector<Combo> combos = {
      {TensorKind::dense, false, 0.0}, {TensorKind::dense, false, 0.01},
      {TensorKind::cp, false, 0.0},    {TensorKind::cp, false, 0.01},
      {TensorKind::cp, true, 0.0},     {TensorKind::cp, true, 0.01},
  };

  double worst = 0.0;
  size_t models = 0;
  for (const auto& combo : combos) {
    for (int trial = 0; trial < 9; ++trial) {
      const size_t n = (trial % 2 == 0) ? 4 : 8;
      auto topo = build_topology(TopologyKind::one_d_b2, 1, n);
      auto model = initialize_model(topo, combo.kind, 2 + rng.bounded(2), 2, {2},
                                    1 + rng.bounded(3), 0.8, rng);
      ImageSet data;
      data.height = 1;
      data.width = n;
      for (size_t s = 0; s < 2; ++s) {
        data.labels.push_back(static_cast<uint16_t>(1 + rng.bounded(2)));
        for (size_t p = 0; p < n; ++p) data.pixels.push_back(rng.uniform());
      }
      const std::vector<size_t> idx{0, 1};

      DropoutMask mask;
      if (combo.mask) {
        // keep at least one term per node; a fully dropped node is a
        // degenerate-output event, not a gradient statement
        for (;;) {
          mask = sample_dropout_mask(model, 0.3, rng);
          bool ok = true;
          for (const auto& layer : mask.keep)
            for (const auto& node : layer) {
              bool any = false;
              for (uint8_t keep : node) any = any || keep;
              ok = ok && any;
            }
          if (ok) break;
        }
      }
      const DropoutMask* mp = combo.mask ? &mask : nullptr;

      const auto bg = gradients(model, data, idx, mp, combo.gamma);
      const auto fd = oracle::finite_difference_grad(model, data, idx, mp, combo.gamma);

      double gmax = 0.0;
      for (size_t q = 0; q < fd.size(); ++q)
        gmax = std::max({gmax, std::abs(fd[q]), std::abs(bg.grad[q])});
      for (size_t q = 0; q < fd.size(); ++q) {
        const double scale =
            std::max({std::abs(fd[q]), std::abs(bg.grad[q]), 1e-3 * gmax, 1e-12});
        worst = std::max(worst, std::abs(fd[q] - bg.grad[q]) / scale);
      }
      ++models;
    }
  }
  const bool pass = worst <= 1e-5;
  return report(2, pass,
                std::to_string(models) +
                    " tiny models (dense/cp x mask x gamma), max rel error vs central "
                    "differences = " +
                    std::to_string(worst) + " (<= 1e-5 required)");
}

// ---------------------------------------------------------------------------
// criterion 3: normalization and invariance
// ---------------------------------------------------------------------------

int criterion_3() {
  Rng rng(20240203);
  double worst_sum = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = oracle::random_vector(2 + rng.bounded(9), rng);
    const auto p = born_probabilities(f);
    double sum = 0.0;
    for (double v : p) {
      if (v < 0.0 || v > 1.0) return report(3, false, "Born probability outside [0,1]");
      sum += v;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  if (worst_sum > 1e-12)
    return report(3, false, "Born sum deviates by " + std::to_string(worst_sum));

  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = oracle::random_vector(2 + rng.bounded(9), rng);
    const Complex c{rng.normal(0, 1), rng.normal(0, 1)};
    if (std::abs(c) < 1e-9) continue;
    std::vector<Complex> scaled(f);
    for (auto& z : scaled) z *= c;
    if (predict(f) != predict(scaled))
      return report(3, false, "predict changed under complex rescaling");
  }

  double worst_norm = 0.0;
  for (size_t d : {size_t{2}, size_t{3}, size_t{4}}) {
    for (int trial = 0; trial < 500; ++trial) {
      const auto f = pixel_feature_map(rng.uniform(), FeatureMapSpec{d});
      double norm_sq = 0.0;
      for (const auto& z : f) norm_sq += std::norm(z);
      worst_norm = std::max(worst_norm, std::abs(norm_sq - 1.0));
    }
  }
  if (worst_norm > 1e-12)
    return report(3, false, "feature norm deviates by " + std::to_string(worst_norm));

  return report(3, true,
                "Born sums within 1e-12, predict scale-invariant over 1000 rescalings, "
                "feature maps unit-norm for d in {2,3,4}");
}

// ---------------------------------------------------------------------------
// criterion 4: scaled MNIST benchmark
// ---------------------------------------------------------------------------

const char* kC4Args =
    "--topology 2d-b4 --resize 16 --kind cp --bond-dim 8 --cp-rank 16 --dropout 0"
    " --train-count 55000 --val-count 5000 --test-count 10000 --batch-size 250"
    " --epochs 10 --seed 4";

int criterion_4(const Context& ctx) {
  if (!dataset_present(ctx, "mnist"))
    return skip(4, "MNIST IDX files not found under the dataset root");
  const fs::path out = ctx.work_dir / "c4";
  fs::remove_all(out);
  const auto result = run_cli(ctx, train_args(ctx, "mnist", out, kC4Args), "c4");
  if (result.exit_code != 0)
    return report(4, false, "training exited with code " + std::to_string(result.exit_code));
  const double acc = parse_after(result.output, "test accuracy (best-validation model): ");
  return report(4, acc >= 0.965,
                "MNIST 2d-b4 m=8 r=16 p=0, 10 epochs: test accuracy " +
                    std::to_string(acc) + " (>= 0.965 required)");
}

// ---------------------------------------------------------------------------
// criterion 5 (long): full MNIST benchmark
// ---------------------------------------------------------------------------

int criterion_5(const Context& ctx) {
  if (!dataset_present(ctx, "mnist"))
    return skip(5, "MNIST IDX files not found under the dataset root");
  const fs::path out = ctx.work_dir / "c5";
  fs::remove_all(out);
  const std::string args =
      "--topology 2d-b4 --resize 16 --kind cp --bond-dim 16 --cp-rank 32 --dropout 0"
      " --train-count 55000 --val-count 5000 --test-count 10000 --batch-size 250"
      " --epochs 30 --seed 5";
  const auto result = run_cli(ctx, train_args(ctx, "mnist", out, args), "c5");
  if (result.exit_code != 0)
    return report(5, false, "training exited with code " + std::to_string(result.exit_code));
  const double acc = parse_after(result.output, "test accuracy (best-validation model): ");
  return report(5, std::abs(acc - 0.983) <= 0.005,
                "MNIST 2d-b4 m=16 r=32: test accuracy " + std::to_string(acc) +
                    " (0.983 +/- 0.005 required)");
}

// ---------------------------------------------------------------------------
// criterion 6 (long): Fashion-MNIST with and without tensor dropout
// ---------------------------------------------------------------------------

int criterion_6(const Context& ctx) {
  if (!dataset_present(ctx, "fashion-mnist"))
    return skip(6, "Fashion-MNIST IDX files not found under the dataset root");
  const std::string base =
      "--topology 2d-b4 --resize 16 --kind cp --bond-dim 16 --cp-rank 64"
      " --train-count 55000 --val-count 5000 --test-count 10000 --batch-size 250"
      " --epochs 30 --seed 6";

  const fs::path out_drop = ctx.work_dir / "c6_p03";
  fs::remove_all(out_drop);
  const auto with_dropout = run_cli(
      ctx, train_args(ctx, "fashion-mnist", out_drop, base + " --dropout 0.3"), "c6_p03");
  if (with_dropout.exit_code != 0)
    return report(6, false, "p=0.3 run exited with code " +
                                std::to_string(with_dropout.exit_code));
  const double acc_drop =
      parse_after(with_dropout.output, "test accuracy (best-validation model): ");

  const fs::path out_plain = ctx.work_dir / "c6_p00";
  fs::remove_all(out_plain);
  const auto without = run_cli(
      ctx, train_args(ctx, "fashion-mnist", out_plain, base + " --dropout 0"), "c6_p00");
  if (without.exit_code != 0)
    return report(6, false, "p=0 run exited with code " + std::to_string(without.exit_code));
  const double acc_plain =
      parse_after(without.output, "test accuracy (best-validation model): ");

  const bool pass =
      std::abs(acc_drop - 0.903) <= 0.006 && std::abs(acc_plain - 0.885) <= 0.006;
  return report(6, pass,
                "Fashion-MNIST m=16 r=64: p=0.3 test " + std::to_string(acc_drop) +
                    " (0.903 +/- 0.006), p=0 test " + std::to_string(acc_plain) +
                    " (0.885 +/- 0.006)");
}

// ---------------------------------------------------------------------------
// criterion 7: branching-ratio ordering at matched m, r (scaled)
// ---------------------------------------------------------------------------

int criterion_7(const Context& ctx) {
  if (!dataset_present(ctx, "fashion-mnist"))
    return skip(7, "Fashion-MNIST IDX files not found under the dataset root");
  // 15 epochs: tensor-dropout runs need the extra averaging steps at
  // 80 batches/epoch before accuracies separate cleanly.
  const std::string base =
      "--resize 16 --kind cp --bond-dim 8 --cp-rank 16 --dropout 0.2"
      " --train-count 20000 --val-count 5000 --test-count 10000 --batch-size 250"
      " --epochs 15 --seed 7";

  const fs::path out_b4 = ctx.work_dir / "c7_b4";
  fs::remove_all(out_b4);
  const auto b4 = run_cli(
      ctx, train_args(ctx, "fashion-mnist", out_b4, base + " --topology 2d-b4"), "c7_b4");
  if (b4.exit_code != 0)
    return report(7, false, "b=4 run exited with code " + std::to_string(b4.exit_code));
  const double acc_b4 = parse_after(b4.output, "test accuracy (best-validation model): ");

  const fs::path out_b2 = ctx.work_dir / "c7_b2";
  fs::remove_all(out_b2);
  const auto b2 = run_cli(
      ctx,
      train_args(ctx, "fashion-mnist", out_b2, base + " --topology 2d-b2-alternating"),
      "c7_b2");
  if (b2.exit_code != 0)
    return report(7, false, "b=2 run exited with code " + std::to_string(b2.exit_code));
  const double acc_b2 = parse_after(b2.output, "test accuracy (best-validation model): ");

  return report(7, acc_b4 - acc_b2 >= 0.02,
                "Fashion-MNIST scaled, m=8 r=16 p=0.2: b=4 test " + std::to_string(acc_b4) +
                    " vs b=2 test " + std::to_string(acc_b2) +
                    " (b=4 must lead by >= 0.02)");
}

// ---------------------------------------------------------------------------
// criterion 8: full-TTN overfitting reproduction (scaled)
// ---------------------------------------------------------------------------

int criterion_8(const Context& ctx) {
  if (!dataset_present(ctx, "fashion-mnist"))
    return skip(8, "Fashion-MNIST IDX files not found under the dataset root");
  const fs::path out = ctx.work_dir / "c8";
  fs::remove_all(out);
  const std::string args =
      "--topology 2d-b4 --resize 16 --kind dense --bond-dim 12 --dropout 0"
      " --train-count 20000 --val-count 5000 --test-count 10000 --batch-size 250"
      " --epochs 12 --seed 8";
  const auto result = run_cli(ctx, train_args(ctx, "fashion-mnist", out, args), "c8");
  if (result.exit_code != 0)
    return report(8, false, "training exited with code " + std::to_string(result.exit_code));

  // Columns: epoch,batch,train_nll,penalty,train_acc,val_acc,wall_seconds.
  const double train_acc = last_column_value(out / "metrics.csv", 4);
  const double val_acc = last_column_value(out / "metrics.csv", 5);
  const bool pass = train_acc >= 0.97 && val_acc <= 0.87;
  return report(8, pass,
                "Fashion-MNIST dense b=4 m=12: final train accuracy " +
                    std::to_string(train_acc) + " (>= 0.97), validation " +
                    std::to_string(val_acc) + " (<= 0.87)");
}

// ---------------------------------------------------------------------------
// criterion 9: dropout improves validation accuracy (scaled)
// ---------------------------------------------------------------------------

int criterion_9(const Context& ctx) {
  if (!dataset_present(ctx, "fashion-mnist"))
    return skip(9, "Fashion-MNIST IDX files not found under the dataset root");
  const std::string base =
      "--topology 2d-b4 --resize 16 --kind cp --bond-dim 16 --cp-rank 32"
      " --train-count 20000 --val-count 5000 --test-count 10000 --batch-size 250"
      " --epochs 15 --seed 9";

  const fs::path out_drop = ctx.work_dir / "c9_p02";
  fs::remove_all(out_drop);
  const auto with_dropout = run_cli(
      ctx, train_args(ctx, "fashion-mnist", out_drop, base + " --dropout 0.2"), "c9_p02");
  if (with_dropout.exit_code != 0)
    return report(9, false, "p=0.2 run exited with code " +
                                std::to_string(with_dropout.exit_code));
  const double val_drop = parse_after(with_dropout.output, "best validation accuracy: ");

  const fs::path out_plain = ctx.work_dir / "c9_p00";
  fs::remove_all(out_plain);
  const auto without = run_cli(
      ctx, train_args(ctx, "fashion-mnist", out_plain, base + " --dropout 0"), "c9_p00");
  if (without.exit_code != 0)
    return report(9, false, "p=0 run exited with code " + std::to_string(without.exit_code));
  const double val_plain = parse_after(without.output, "best validation accuracy: ");

  return report(9, val_drop - val_plain >= 0.005,
                "Fashion-MNIST scaled, m=16 r=32: best validation p=0.2 " +
                    std::to_string(val_drop) + " vs p=0 " + std::to_string(val_plain) +
                    " (p=0.2 must lead by >= 0.005)");
}

// ---------------------------------------------------------------------------
// criterion 10: cost scaling counts
// ---------------------------------------------------------------------------

size_t measured_muls(const TreeTopology& topo, TensorKind kind, size_t m, size_t L,
                     size_t d, size_t r) {
  const TTNModel model = make_model(topo, kind, m, L, FeatureMapSpec{d}, r);
  const std::vector<double> image(topo.num_pixels(), 0.0);
  MulCounter counter;
  (void)forward(model, image, nullptr, nullptr, nullptr, &counter);
  return counter.muls;
}

int criterion_10() {
  const std::vector<std::pair<TopologyKind, std::pair<size_t, size_t>>> shapes = {
      {TopologyKind::one_d_b2, {1, 256}},
      {TopologyKind::two_d_b2_alt, {16, 16}},
      {TopologyKind::two_d_b4, {16, 16}},
  };
  for (const auto& [kind, shape] : shapes) {
    const auto topo = build_topology(kind, shape.first, shape.second);
    for (size_t m : {size_t{4}, size_t{8}}) {
      const size_t full_measured = measured_muls(topo, TensorKind::dense, m, 10, 2, 0);
      const size_t full_formula = forward_mul_count(topo, m, 10, 2, TensorKind::dense, 0);
      const size_t cp_measured = measured_muls(topo, TensorKind::cp, m, 10, 2, 16);
      const size_t cp_formula = forward_mul_count(topo, m, 10, 2, TensorKind::cp, 16);
      if (full_measured != full_formula || cp_measured != cp_formula)
        return report(10, false,
                      "measured counts diverge from the enumeration on " + to_string(kind));
    }
  }

  // Doubling m must scale full/cp roughly like m^b / (b m r) does: 2^b.
  for (const auto& [kind, shape, b] :
       std::vector<std::tuple<TopologyKind, std::pair<size_t, size_t>, size_t>>{
           {TopologyKind::one_d_b2, {1, 256}, 2},
           {TopologyKind::two_d_b4, {16, 16}, 4}}) {
    const auto topo = build_topology(kind, shape.first, shape.second);
    auto ratio = [&](size_t m) {
      return static_cast<double>(forward_mul_count(topo, m, 10, 2, TensorKind::dense, 0)) /
             static_cast<double>(forward_mul_count(topo, m, 10, 2, TensorKind::cp, 16));
    };
    const double growth = ratio(16) / ratio(8);
    const double expected = std::pow(2.0, static_cast<double>(b));
    if (std::abs(growth / expected - 1.0) > 0.2)
      return report(10, false,
                    "full/cp multiply ratio grew by " + std::to_string(growth) +
                        " when m doubled; expected about " + std::to_string(expected));
  }
  return report(10, true,
                "measured multiply counts equal the enumeration for all three topologies "
                "(m in {4,8}), and the full/cp ratio grows like m^b/(b m r)");
}

// ---------------------------------------------------------------------------
// criterion 11: determinism of the criterion-4 run
// ---------------------------------------------------------------------------

int criterion_11(const Context& ctx) {
  if (!dataset_present(ctx, "mnist"))
    return skip(11, "MNIST IDX files not found under the dataset root");
  const fs::path out_a = ctx.work_dir / "c11_a";
  const fs::path out_b = ctx.work_dir / "c11_b";
  fs::remove_all(out_a);
  fs::remove_all(out_b);
  const auto a = run_cli(ctx, train_args(ctx, "mnist", out_a, kC4Args), "c11_a");
  if (a.exit_code != 0)
    return report(11, false, "first run exited with code " + std::to_string(a.exit_code));
  const auto b = run_cli(ctx, train_args(ctx, "mnist", out_b, kC4Args), "c11_b");
  if (b.exit_code != 0)
    return report(11, false, "second run exited with code " + std::to_string(b.exit_code));

  // The wall_seconds column is the one field that legitimately differs
  // between runs; every other byte of every row must match.
  const auto rows_a = metrics_rows_without_wall(out_a / "metrics.csv");
  const auto rows_b = metrics_rows_without_wall(out_b / "metrics.csv");
  const bool pass = !rows_a.empty() && rows_a == rows_b;
  return report(11, pass,
                "two seeded criterion-4 runs: " + std::to_string(rows_a.size()) +
                    " metrics rows byte-identical outside the wall-clock column");
}

} // namespace

int main(int argc, char** argv) {
  Context ctx;
  if (const char* env = std::getenv("TTN_DATA_DIR")) ctx.data_dir = env;
  int criterion = 0;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << arg << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--criterion") criterion = std::stoi(next());
    else if (arg == "--data-dir") ctx.data_dir = next();
    else if (arg == "--work-dir") ctx.work_dir = next();
    else if (arg == "--threads") ctx.threads = std::stoul(next());
    else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }

  try {
    switch (criterion) {
      case 1: return criterion_1();
      case 2: return criterion_2();
      case 3: return criterion_3();
      case 4: return criterion_4(ctx);
      case 5: return criterion_5(ctx);
      case 6: return criterion_6(ctx);
      case 7: return criterion_7(ctx);
      case 8: return criterion_8(ctx);
      case 9: return criterion_9(ctx);
      case 10: return criterion_10();
      case 11: return criterion_11(ctx);
      default:
        std::cerr << "usage: ttn_acceptance --criterion <1..11> [--data-dir DIR] "
                     "[--work-dir DIR] [--threads N]\n";
        return 2;
    }
  } catch (const std::exception& e) {
    return report(criterion, false, std::string("exception: ") + e.what());
  }
}
