#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ttn {

/// Decoded IDX container: unsigned-byte payload with big-endian dimension
/// header. Only the ubyte element type (0x08) is supported, which covers the
/// MNIST-family files.
struct IdxData {
  std::vector<uint32_t> dims;
  std::vector<uint8_t> payload;
};

inline constexpr uint32_t kIdxImagesMagic = 0x00000803; // ubyte, 3 dims
inline constexpr uint32_t kIdxLabelsMagic = 0x00000801; // ubyte, 1 dim

/// Parse raw or gzip-compressed IDX bytes (gzip detected by the 0x1f 0x8b
/// prefix). Throws ParseError with the byte offset of the problem.
IdxData parse_idx(std::span<const uint8_t> bytes);

IdxData read_idx_file(const std::filesystem::path& path);

/// Re-serialize to the raw (uncompressed) IDX byte layout.
std::vector<uint8_t> serialize_idx(const IdxData& data);

/// gzip-compress, for writing .gz fixtures and round-trip checks.
std::vector<uint8_t> gzip_bytes(std::span<const uint8_t> bytes);

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const uint8_t> bytes);

} // namespace ttn
