#pragma once

#include <filesystem>
#include <string>

#include "run_config.hpp"

namespace ttn::cli {

// Process exit codes: 0 success, 2 configuration/input errors,
// 3 optimization divergence (partial metrics are kept).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;
inline constexpr int kExitDivergence = 3;

int cmd_train(RunConfig config, const std::string& resume_path);

int cmd_eval(const std::filesystem::path& checkpoint_path, const std::string& split,
             const std::string& data_dir_override, size_t threads);

int cmd_inspect(const RunConfig& config);

} // namespace ttn::cli
