#include "doctest.h"

#include <filesystem>

#include "checkpoint.hpp"
#include "synth.hpp"
#include "ttn/errors.hpp"
#include "ttn/gradients.hpp"
#include "ttn/idx.hpp"
#include "ttn/params.hpp"

using namespace ttn;
using namespace ttn::cli;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("ttn_ckpt_" + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

Checkpoint make_test_checkpoint() {
  RunConfig config;
  config.topology = "2d-b4";
  config.resize = 4;
  config.bond_dim = 2;
  config.cp_rank = 3;
  config.num_classes = 10;

  auto topo = build_topology(TopologyKind::two_d_b4, 4, 4);
  Rng rng(9);
  auto model = initialize_model(topo, TensorKind::cp, 2, 10, {2}, 3, 0.4, rng);
  AdamState adam = make_adam_state(2 * model_param_count(model));
  for (size_t i = 0; i < adam.m.size(); ++i) {
    adam.m[i] = 0.01 * static_cast<double>(i);
    adam.v[i] = 0.001 * static_cast<double>(i);
  }
  adam.step = 17;
  return snapshot(config, model, adam, rng, 5, true, 0.87);
}

} // namespace

TEST_SUITE_BEGIN("checkpoint");

TEST_CASE("config canonical text round-trips") {
  RunConfig config;
  config.dataset = "fashion-mnist";
  config.learn_rate = 0.0005;
  config.dropout = 0.3;
  config.seed = 987654321;
  config.epochs = 12;
  const std::string text = config.canonical_text();
  const RunConfig back = RunConfig::from_text(text);
  CHECK(back.canonical_text() == text);
  CHECK(back.dataset == "fashion-mnist");
  CHECK(back.learn_rate == 0.0005);
  CHECK(back.dropout == 0.3);
}

TEST_CASE("config rejects unknown keys and malformed overrides") {
  RunConfig config;
  CHECK_THROWS_AS(config.set("bond_dims", "8"), ConfigError);
  CHECK_THROWS_AS(config.apply_overrides({"epochs"}), ConfigError);
  CHECK_THROWS_AS(config.set("epochs", "three"), ConfigError);
}

TEST_CASE("checkpoint save -> load -> save is byte-identical") {
  const auto dir = temp_dir("roundtrip");
  const Checkpoint original = make_test_checkpoint();
  save_checkpoint(dir / "a.ttn", original);
  const Checkpoint loaded = load_checkpoint(dir / "a.ttn");
  save_checkpoint(dir / "b.ttn", loaded);

  const auto bytes_a = read_file_bytes(dir / "a.ttn");
  const auto bytes_b = read_file_bytes(dir / "b.ttn");
  CHECK(bytes_a == bytes_b);
  CHECK(loaded.epoch == 5);
  CHECK(loaded.best_val_acc == 0.87);
  CHECK(loaded.adam.step == 17);
  CHECK(loaded.rng_state == original.rng_state);
}

TEST_CASE("checkpoint version mismatch is rejected") {
  const auto dir = temp_dir("version");
  const Checkpoint original = make_test_checkpoint();
  save_checkpoint(dir / "v.ttn", original);
  auto bytes = read_file_bytes(dir / "v.ttn");
  bytes[8] = 99; // version field
  write_file_bytes(dir / "v.ttn", bytes);
  CHECK_THROWS_WITH_AS(load_checkpoint(dir / "v.ttn"), doctest::Contains("version"),
                       ParseError);
}

TEST_CASE("truncated and padded checkpoints are rejected") {
  const auto dir = temp_dir("trunc");
  save_checkpoint(dir / "t.ttn", make_test_checkpoint());
  auto bytes = read_file_bytes(dir / "t.ttn");

  auto truncated = bytes;
  truncated.resize(bytes.size() / 2);
  write_file_bytes(dir / "t.ttn", truncated);
  CHECK_THROWS_AS(load_checkpoint(dir / "t.ttn"), ParseError);

  auto padded = bytes;
  padded.push_back(0);
  write_file_bytes(dir / "p.ttn", padded);
  CHECK_THROWS_WITH_AS(load_checkpoint(dir / "p.ttn"), doctest::Contains("trailing"),
                       ParseError);
}

TEST_CASE("model_from_checkpoint restores the exact parameters") {
  const auto dir = temp_dir("model");
  const Checkpoint original = make_test_checkpoint();
  save_checkpoint(dir / "m.ttn", original);
  const Checkpoint loaded = load_checkpoint(dir / "m.ttn");
  const TTNModel model = model_from_checkpoint(loaded);
  CHECK(export_params(model) == original.params);
  CHECK(model.kind == TensorKind::cp);
  CHECK(model.cp_rank == 3);
}

TEST_SUITE_END();
