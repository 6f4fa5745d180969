#include "checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "ttn/errors.hpp"
#include "ttn/params.hpp"

namespace ttn::cli {

namespace {

class Writer {
public:
  explicit Writer(const std::filesystem::path& path)
      : out_(path, std::ios::binary | std::ios::trunc), path_(path.string()) {
    if (!out_) throw IoError("cannot open " + path_ + " for writing");
  }

  void u32(uint32_t v) { raw(&v, 4); }
  void u64(uint64_t v) { raw(&v, 8); }
  void u8(uint8_t v) { raw(&v, 1); }
  void f64(double v) { raw(&v, 8); }
  void bytes(const void* data, size_t n) { raw(data, n); }

  void f64_array(const std::vector<double>& values) {
    raw(values.data(), values.size() * 8);
  }

  void close() {
    out_.flush();
    if (!out_) throw IoError("failed writing " + path_);
  }

private:
  void raw(const void* data, size_t n) {
    static_assert(std::endian::native == std::endian::little,
                  "checkpoint writer assumes a little-endian host");
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  }

  std::ofstream out_;
  std::string path_;
};

class Reader {
public:
  explicit Reader(const std::filesystem::path& path)
      : in_(path, std::ios::binary), path_(path.string()) {
    if (!in_) throw IoError("cannot open checkpoint " + path_);
  }

  uint32_t u32() { return get<uint32_t>(); }
  uint64_t u64() { return get<uint64_t>(); }
  uint8_t u8() { return get<uint8_t>(); }
  double f64() { return get<double>(); }

  void bytes(void* data, size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n)
      throw ParseError("checkpoint " + path_ + ": truncated at byte offset " +
                       std::to_string(offset_));
    offset_ += n;
  }

  void f64_array(std::vector<double>& values, size_t n) {
    values.resize(n);
    bytes(values.data(), n * 8);
  }

  void expect_eof() {
    char c;
    in_.read(&c, 1);
    if (!in_.eof())
      throw ParseError("checkpoint " + path_ + ": trailing bytes at offset " +
                       std::to_string(offset_));
  }

private:
  template <typename T>
  T get() {
    static_assert(std::endian::native == std::endian::little,
                  "checkpoint reader assumes a little-endian host");
    T v{};
    bytes(&v, sizeof(T));
    return v;
  }

  std::ifstream in_;
  std::string path_;
  size_t offset_ = 0;
};

} // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  Writer w(path);
  w.bytes(kCheckpointMagic, 8);
  w.u32(ckpt.version);
  w.u64(ckpt.config_text.size());
  w.bytes(ckpt.config_text.data(), ckpt.config_text.size());
  w.u64(ckpt.epoch);
  w.u8(ckpt.at_epoch_boundary ? 1 : 0);
  w.f64(ckpt.best_val_acc);
  w.u32(ckpt.height);
  w.u32(ckpt.width);
  const uint64_t complex_count = ckpt.params.size() / 2;
  w.u64(complex_count);
  w.f64_array(ckpt.params);
  w.u64(ckpt.adam.step);
  w.f64_array(ckpt.adam.m);
  w.f64_array(ckpt.adam.v);
  for (uint64_t word : ckpt.rng_state) w.u64(word);
  w.close();
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw ParseError("checkpoint " + path.string() + ": bad magic");

  Checkpoint ckpt;
  ckpt.version = r.u32();
  if (ckpt.version != kCheckpointVersion)
    throw ParseError("checkpoint " + path.string() + ": version " +
                     std::to_string(ckpt.version) + " not supported (expected " +
                     std::to_string(kCheckpointVersion) + ")");

  const uint64_t config_len = r.u64();
  if (config_len > (uint64_t{1} << 20))
    throw ParseError("checkpoint " + path.string() + ": implausible config length");
  ckpt.config_text.resize(config_len);
  r.bytes(ckpt.config_text.data(), config_len);

  ckpt.epoch = r.u64();
  ckpt.at_epoch_boundary = r.u8() != 0;
  ckpt.best_val_acc = r.f64();
  ckpt.height = r.u32();
  ckpt.width = r.u32();

  const uint64_t complex_count = r.u64();
  if (complex_count > (uint64_t{1} << 32))
    throw ParseError("checkpoint " + path.string() + ": implausible parameter count");
  r.f64_array(ckpt.params, 2 * complex_count);
  ckpt.adam.step = r.u64();
  r.f64_array(ckpt.adam.m, 2 * complex_count);
  r.f64_array(ckpt.adam.v, 2 * complex_count);
  for (uint64_t& word : ckpt.rng_state) word = r.u64();
  r.expect_eof();
  return ckpt;
}

TTNModel model_from_checkpoint(const Checkpoint& ckpt) {
  const RunConfig config = RunConfig::from_text(ckpt.config_text);
  const TreeTopology topo =
      build_topology(config.topology_kind(), ckpt.height, ckpt.width);
  TTNModel model = make_model(topo, config.tensor_kind(), config.bond_dim,
                              config.num_classes, FeatureMapSpec{config.feature_dim},
                              config.cp_rank);
  import_params(model, ckpt.params);
  return model;
}

Checkpoint snapshot(const RunConfig& config, const TTNModel& model,
                    const AdamState& adam, const Rng& rng, uint64_t epoch,
                    bool at_epoch_boundary, double best_val_acc) {
  Checkpoint ckpt;
  ckpt.config_text = config.canonical_text();
  ckpt.epoch = epoch;
  ckpt.at_epoch_boundary = at_epoch_boundary;
  ckpt.best_val_acc = best_val_acc;
  ckpt.height = static_cast<uint32_t>(model.topology.height);
  ckpt.width = static_cast<uint32_t>(model.topology.width);
  ckpt.params = export_params(model);
  ckpt.adam = adam;
  ckpt.rng_state = rng.state();
  return ckpt;
}

} // namespace ttn::cli
