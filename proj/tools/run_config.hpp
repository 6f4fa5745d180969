#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ttn/dataset.hpp"
#include "ttn/model.hpp"
#include "ttn/topology.hpp"
#include "ttn/train.hpp"

namespace ttn::cli {

// Canonical numeric formatting (shortest round-trip) shared by the config
// echo and the metrics writer, so serialized runs are stable byte-for-byte.
std::string format_double(double v);
double parse_double(std::string_view s);
uint64_t parse_u64(std::string_view s);

/// Flat key=value run configuration. Files hold one pair per line; '#'
/// starts a comment. CLI overrides use the same keys.
struct RunConfig {
  // data
  std::string dataset = "mnist";
  std::string data_dir;  // empty -> $TTN_DATA_DIR
  size_t resize = 16;    // 0 keeps the native image size
  size_t train_count = 55000;
  size_t val_count = 5000;
  size_t test_count = 10000;

  // model
  std::string topology = "2d-b4";
  std::string kind = "cp";
  size_t bond_dim = 8;
  size_t cp_rank = 16;
  size_t num_classes = 10;
  size_t feature_dim = 2;

  // optimization
  double learn_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-7;
  double init_std = 0.4;
  double dropout = 0.0;
  double penalty = 0.0;
  size_t batch_size = 250;
  size_t epochs = 1;
  uint64_t seed = 1;

  // run mechanics
  std::string out_dir = "runs/default";
  size_t checkpoint_cadence = 1;
  size_t eval_per_epoch = 2;
  size_t train_eval_subset = 5000;
  bool eval_full_train = false;
  size_t grad_stripes = 8;
  size_t threads = 0;

  void set(std::string_view key, std::string_view value);
  void apply_overrides(const std::vector<std::string>& pairs); // "key=value"
  static RunConfig from_file(const std::filesystem::path& path);
  static RunConfig from_text(std::string_view text);

  /// Sorted key=value lines; parses back to an identical config.
  std::string canonical_text() const;

  void validate() const;

  TopologyKind topology_kind() const { return topology_kind_from_string(topology); }
  TensorKind tensor_kind() const { return tensor_kind_from_string(kind); }
  TrainConfig train_config() const;
  SplitSpec split_spec() const;

  std::filesystem::path resolved_data_dir() const;
  std::filesystem::path dataset_dir() const { return resolved_data_dir() / dataset; }

  uint64_t subset_seed() const;
  uint64_t stream_seed() const;
};

/// Locate an IDX file, preferring the raw name and falling back to .gz.
std::filesystem::path find_idx_file(const std::filesystem::path& dir,
                                    const std::string& base_name);

struct LoadedData {
  Splits splits;
  size_t height = 0, width = 0;
};

/// Load, optionally resize, and split the configured dataset.
LoadedData load_dataset(const RunConfig& config);

} // namespace ttn::cli
