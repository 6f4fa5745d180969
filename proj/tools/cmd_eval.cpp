#include <cstdio>
#include <iostream>
#include <vector>

#include "checkpoint.hpp"
#include "commands.hpp"
#include "ttn/errors.hpp"
#include "ttn/forward.hpp"
#include "ttn/parallel.hpp"

namespace ttn::cli {

namespace {

struct ConfusionResult {
  std::vector<size_t> counts; // L x L, rows = true class, cols = predicted
  size_t degenerate = 0;
  size_t correct = 0;
};

ConfusionResult confusion(const TTNModel& model, const ImageSet& data, size_t threads) {
  const size_t L = model.num_classes;
  constexpr size_t kStripes = 64;
  const size_t n_stripes = std::min(kStripes, std::max<size_t>(data.size(), 1));
  std::vector<ConfusionResult> partial(n_stripes);
  for (auto& p : partial) p.counts.assign(L * L, 0);

  parallel_stripes(n_stripes, threads, [&](size_t sidx) {
    Workspace ws;
    auto& p = partial[sidx];
    const size_t lo = data.size() * sidx / n_stripes;
    const size_t hi = data.size() * (sidx + 1) / n_stripes;
    for (size_t i = lo; i < hi; ++i) {
      const auto f = forward(model, data.image(i), nullptr, nullptr, &ws);
      double norm_sq = 0.0;
      for (const auto& z : f) norm_sq += std::norm(z);
      if (!(norm_sq >= kBornNormFloor)) {
        ++p.degenerate;
        continue;
      }
      const size_t pred = predict(f);
      const size_t truth = data.label(i);
      p.counts[(truth - 1) * L + (pred - 1)]++;
      if (pred == truth) ++p.correct;
    }
  });

  ConfusionResult total;
  total.counts.assign(L * L, 0);
  for (const auto& p : partial) {
    for (size_t e = 0; e < L * L; ++e) total.counts[e] += p.counts[e];
    total.degenerate += p.degenerate;
    total.correct += p.correct;
  }
  return total;
}

} // namespace

int cmd_eval(const std::filesystem::path& checkpoint_path, const std::string& split,
             const std::string& data_dir_override, size_t threads) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  RunConfig config = RunConfig::from_text(ckpt.config_text);
  if (!data_dir_override.empty()) config.data_dir = data_dir_override;

  const TTNModel model = model_from_checkpoint(ckpt);
  const LoadedData data = load_dataset(config);

  const ImageSet* set = nullptr;
  if (split == "train") set = &data.splits.train;
  else if (split == "val") set = &data.splits.val;
  else if (split == "test") set = &data.splits.test;
  else throw ConfigError("unknown split '" + split + "' (expected train, val, or test)");

  const ConfusionResult result = confusion(model, *set, threads);
  const double accuracy =
      set->size() > 0 ? static_cast<double>(result.correct) / set->size() : 0.0;

  char acc[32];
  std::snprintf(acc, sizeof(acc), "%.4f", accuracy);
  std::cout << "split: " << split << " (" << set->size() << " samples, from epoch "
            << ckpt.epoch << " checkpoint)\n";
  std::cout << "accuracy: " << acc << "\n";
  std::cout << "degenerate outputs: " << result.degenerate << "\n";
  std::cout << "confusion (rows true class 1.." << model.num_classes
            << ", cols predicted):\n";
  for (size_t t = 0; t < model.num_classes; ++t) {
    for (size_t p = 0; p < model.num_classes; ++p)
      std::cout << result.counts[t * model.num_classes + p]
                << (p + 1 < model.num_classes ? ' ' : '\n');
  }
  return kExitOk;
}

} // namespace ttn::cli
