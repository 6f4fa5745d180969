#include "run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "ttn/errors.hpp"
#include "ttn/rng.hpp"

namespace ttn::cli {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("bad numeric value '" + std::string(s) + "'");
  return v;
}

uint64_t parse_u64(std::string_view s) {
  uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("bad integer value '" + std::string(s) + "'");
  return v;
}

namespace {

std::string trim(std::string_view s) {
  size_t lo = 0, hi = s.size();
  while (lo < hi && (s[lo] == ' ' || s[lo] == '\t')) ++lo;
  while (hi > lo && (s[hi - 1] == ' ' || s[hi - 1] == '\t' || s[hi - 1] == '\r')) --hi;
  return std::string(s.substr(lo, hi - lo));
}

} // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  const std::string v(value);
  if (key == "dataset") dataset = v;
  else if (key == "data_dir") data_dir = v;
  else if (key == "resize") resize = parse_u64(v);
  else if (key == "train_count") train_count = parse_u64(v);
  else if (key == "val_count") val_count = parse_u64(v);
  else if (key == "test_count") test_count = parse_u64(v);
  else if (key == "topology") topology = v;
  else if (key == "kind") kind = v;
  else if (key == "bond_dim") bond_dim = parse_u64(v);
  else if (key == "cp_rank") cp_rank = parse_u64(v);
  else if (key == "num_classes") num_classes = parse_u64(v);
  else if (key == "feature_dim") feature_dim = parse_u64(v);
  else if (key == "learn_rate") learn_rate = parse_double(v);
  else if (key == "beta1") beta1 = parse_double(v);
  else if (key == "beta2") beta2 = parse_double(v);
  else if (key == "adam_eps") adam_eps = parse_double(v);
  else if (key == "init_std") init_std = parse_double(v);
  else if (key == "dropout") dropout = parse_double(v);
  else if (key == "penalty") penalty = parse_double(v);
  else if (key == "batch_size") batch_size = parse_u64(v);
  else if (key == "epochs") epochs = parse_u64(v);
  else if (key == "seed") seed = parse_u64(v);
  else if (key == "out_dir") out_dir = v;
  else if (key == "checkpoint_cadence") checkpoint_cadence = parse_u64(v);
  else if (key == "eval_per_epoch") eval_per_epoch = parse_u64(v);
  else if (key == "train_eval_subset") train_eval_subset = parse_u64(v);
  else if (key == "eval_full_train") eval_full_train = parse_u64(v) != 0;
  else if (key == "grad_stripes") grad_stripes = parse_u64(v);
  else if (key == "threads") threads = parse_u64(v);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::apply_overrides(const std::vector<std::string>& pairs) {
  for (const std::string& pair : pairs) {
    const size_t eq = pair.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + pair + "' is not of the form key=value");
    set(trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
  }
}

RunConfig RunConfig::from_text(std::string_view text) {
  RunConfig config;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos <= text.size()) {
    const size_t end = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + " is not key=value");
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

std::string RunConfig::canonical_text() const {
  std::string out;
  auto kv = [&out](std::string_view key, const std::string& value) {
    out.append(key);
    out.push_back('=');
    out.append(value);
    out.push_back('\n');
  };
  kv("adam_eps", format_double(adam_eps));
  kv("batch_size", std::to_string(batch_size));
  kv("beta1", format_double(beta1));
  kv("beta2", format_double(beta2));
  kv("bond_dim", std::to_string(bond_dim));
  kv("checkpoint_cadence", std::to_string(checkpoint_cadence));
  kv("cp_rank", std::to_string(cp_rank));
  kv("data_dir", data_dir);
  kv("dataset", dataset);
  kv("dropout", format_double(dropout));
  kv("epochs", std::to_string(epochs));
  kv("eval_full_train", std::string(eval_full_train ? "1" : "0"));
  kv("eval_per_epoch", std::to_string(eval_per_epoch));
  kv("feature_dim", std::to_string(feature_dim));
  kv("grad_stripes", std::to_string(grad_stripes));
  kv("init_std", format_double(init_std));
  kv("kind", kind);
  kv("learn_rate", format_double(learn_rate));
  kv("num_classes", std::to_string(num_classes));
  kv("out_dir", out_dir);
  kv("penalty", format_double(penalty));
  kv("resize", std::to_string(resize));
  kv("seed", std::to_string(seed));
  kv("test_count", std::to_string(test_count));
  kv("threads", std::to_string(threads));
  kv("topology", topology);
  kv("train_count", std::to_string(train_count));
  kv("train_eval_subset", std::to_string(train_eval_subset));
  kv("val_count", std::to_string(val_count));
  return out;
}

void RunConfig::validate() const {
  (void)topology_kind();
  (void)tensor_kind();
  if (bond_dim == 0) throw ConfigError("bond_dim must be >= 1");
  if (tensor_kind() == TensorKind::cp && cp_rank == 0)
    throw ConfigError("cp models need cp_rank >= 1");
  if (num_classes < 2) throw ConfigError("num_classes must be >= 2");
  if (feature_dim < 2) throw ConfigError("feature_dim must be >= 2");
  if (train_count == 0) throw ConfigError("train_count must be >= 1");
  train_config().validate();
}

TrainConfig RunConfig::train_config() const {
  TrainConfig tc;
  tc.learn_rate = learn_rate;
  tc.beta1 = beta1;
  tc.beta2 = beta2;
  tc.adam_eps = adam_eps;
  tc.init_std = init_std;
  tc.dropout_rate = dropout;
  tc.penalty = penalty;
  tc.batch_size = batch_size;
  tc.epochs = epochs;
  tc.rng_seed = seed;
  tc.grad_stripes = grad_stripes;
  tc.threads = threads;
  return tc;
}

SplitSpec RunConfig::split_spec() const {
  SplitSpec spec;
  spec.train_count = train_count;
  spec.val_count = val_count;
  spec.test_count = test_count;
  spec.shuffle_seed = Rng::mix(seed, 0xA1);
  return spec;
}

uint64_t RunConfig::subset_seed() const { return Rng::mix(seed, 0xB2); }
uint64_t RunConfig::stream_seed() const { return Rng::mix(seed, 0xC3); }

std::filesystem::path RunConfig::resolved_data_dir() const {
  if (!data_dir.empty()) return data_dir;
  if (const char* env = std::getenv("TTN_DATA_DIR")) return env;
  throw ConfigError("no dataset root: set data_dir or the TTN_DATA_DIR environment variable");
}

std::filesystem::path find_idx_file(const std::filesystem::path& dir,
                                    const std::string& base_name) {
  const std::filesystem::path raw = dir / base_name;
  if (std::filesystem::exists(raw)) return raw;
  const std::filesystem::path gz = dir / (base_name + ".gz");
  if (std::filesystem::exists(gz)) return gz;
  throw IoError("dataset file not found: " + raw.string() + " (also tried .gz)");
}

LoadedData load_dataset(const RunConfig& config) {
  const auto dir = config.dataset_dir();
  ImageSet train_source =
      load_image_set(find_idx_file(dir, "train-images-idx3-ubyte"),
                     find_idx_file(dir, "train-labels-idx1-ubyte"), config.dataset);
  ImageSet test_source =
      load_image_set(find_idx_file(dir, "t10k-images-idx3-ubyte"),
                     find_idx_file(dir, "t10k-labels-idx1-ubyte"), config.dataset);

  if (config.resize != 0 &&
      (train_source.height != config.resize || train_source.width != config.resize)) {
    train_source = resize_set(train_source, config.resize, config.resize);
    test_source = resize_set(test_source, config.resize, config.resize);
  }

  LoadedData data;
  data.height = train_source.height;
  data.width = train_source.width;
  data.splits = make_splits(train_source, test_source, config.split_spec());
  return data;
}

} // namespace ttn::cli
