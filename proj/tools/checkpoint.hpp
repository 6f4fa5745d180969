#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "ttn/model.hpp"
#include "ttn/train.hpp"

namespace ttn::cli {

inline constexpr char kCheckpointMagic[8] = {'T', 'T', 'N', 'C', 'K', 'P', 'T', '\0'};
inline constexpr uint32_t kCheckpointVersion = 1;

/// Complete training state. Binary layout (all integers and doubles
/// little-endian):
///   magic[8] "TTNCKPT\0", version u32,
///   config_len u64, config bytes (canonical key=value text),
///   epoch u64, at_epoch_boundary u8, best_val_acc f64,
///   height u32, width u32,
///   param_count P u64, params 2P f64 (re, im per complex, canonical order),
///   adam step u64, first moments 2P f64, second moments 2P f64,
///   rng state 4 u64.
struct Checkpoint {
  uint32_t version = kCheckpointVersion;
  std::string config_text;
  uint64_t epoch = 0;
  bool at_epoch_boundary = true;
  double best_val_acc = 0.0;
  uint32_t height = 0, width = 0;
  std::vector<double> params;
  AdamState adam;
  std::array<uint64_t, 4> rng_state{};
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Rebuild the model a checkpoint describes (topology from its config echo,
/// parameters imported from the flat vector).
TTNModel model_from_checkpoint(const Checkpoint& ckpt);

Checkpoint snapshot(const RunConfig& config, const TTNModel& model,
                    const AdamState& adam, const Rng& rng, uint64_t epoch,
                    bool at_epoch_boundary, double best_val_acc);

} // namespace ttn::cli
