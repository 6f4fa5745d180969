#include "ttn/idx.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <string>

#include "ttn/errors.hpp"

namespace ttn {

namespace {

uint32_t read_be32(std::span<const uint8_t> bytes, size_t offset) {
  return (uint32_t(bytes[offset]) << 24) | (uint32_t(bytes[offset + 1]) << 16) |
         (uint32_t(bytes[offset + 2]) << 8) | uint32_t(bytes[offset + 3]);
}

void write_be32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(uint8_t(v >> 24));
  out.push_back(uint8_t(v >> 16));
  out.push_back(uint8_t(v >> 8));
  out.push_back(uint8_t(v));
}

std::vector<uint8_t> gunzip(std::span<const uint8_t> bytes) {
  z_stream strm{};
  // 15 + 16 selects gzip framing.
  if (inflateInit2(&strm, 15 + 16) != Z_OK)
    throw ParseError("gzip: inflateInit failed");

  std::vector<uint8_t> out;
  out.reserve(bytes.size() * 4);
  std::vector<uint8_t> buffer(1 << 16);
  strm.next_in = const_cast<Bytef*>(bytes.data());
  strm.avail_in = static_cast<uInt>(bytes.size());

  int rc = Z_OK;
  do {
    strm.next_out = buffer.data();
    strm.avail_out = static_cast<uInt>(buffer.size());
    rc = inflate(&strm, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&strm);
      throw ParseError("gzip: corrupt stream (zlib rc " + std::to_string(rc) + ")");
    }
    out.insert(out.end(), buffer.data(), buffer.data() + (buffer.size() - strm.avail_out));
  } while (rc != Z_STREAM_END);

  inflateEnd(&strm);
  return out;
}

} // namespace

IdxData parse_idx(std::span<const uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b) {
    const std::vector<uint8_t> raw = gunzip(bytes);
    return parse_idx(raw);
  }

  if (bytes.size() < 4)
    throw ParseError("idx: truncated magic at byte offset 0");
  const uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImagesMagic && magic != kIdxLabelsMagic)
    throw ParseError("idx: bad magic 0x" + std::to_string(magic) + " at byte offset 0");

  const size_t ndims = magic & 0xff;
  if (bytes.size() < 4 + 4 * ndims)
    throw ParseError("idx: truncated dimension header at byte offset " +
                     std::to_string(bytes.size()));

  IdxData data;
  data.dims.resize(ndims);
  uint64_t count = 1;
  for (size_t i = 0; i < ndims; ++i) {
    data.dims[i] = read_be32(bytes, 4 + 4 * i);
    count *= data.dims[i];
    if (count > (uint64_t{1} << 34))
      throw ParseError("idx: dimension overflow at byte offset " + std::to_string(4 + 4 * i));
  }

  const size_t header = 4 + 4 * ndims;
  if (bytes.size() < header + count)
    throw ParseError("idx: truncated payload, have " + std::to_string(bytes.size()) +
                     " bytes, need " + std::to_string(header + count) +
                     " (failure at byte offset " + std::to_string(bytes.size()) + ")");
  if (bytes.size() > header + count)
    throw ParseError("idx: trailing bytes after payload at byte offset " +
                     std::to_string(header + count));

  data.payload.assign(bytes.begin() + header, bytes.end());
  return data;
}

IdxData read_idx_file(const std::filesystem::path& path) {
  return parse_idx(read_file_bytes(path));
}

std::vector<uint8_t> serialize_idx(const IdxData& data) {
  std::vector<uint8_t> out;
  const uint32_t magic = (data.dims.size() == 1) ? kIdxLabelsMagic : kIdxImagesMagic;
  if (data.dims.size() != 1 && data.dims.size() != 3)
    throw ParseError("idx: only 1- or 3-dimensional containers are supported");
  write_be32(out, magic);
  uint64_t count = 1;
  for (uint32_t d : data.dims) {
    write_be32(out, d);
    count *= d;
  }
  if (count != data.payload.size())
    throw ParseError("idx: payload size does not match dimensions");
  out.insert(out.end(), data.payload.begin(), data.payload.end());
  return out;
}

std::vector<uint8_t> gzip_bytes(std::span<const uint8_t> bytes) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK)
    throw IoError("gzip: deflateInit failed");

  std::vector<uint8_t> out;
  std::vector<uint8_t> buffer(1 << 16);
  strm.next_in = const_cast<Bytef*>(bytes.data());
  strm.avail_in = static_cast<uInt>(bytes.size());
  int rc = Z_OK;
  do {
    strm.next_out = buffer.data();
    strm.avail_out = static_cast<uInt>(buffer.size());
    rc = deflate(&strm, Z_FINISH);
    out.insert(out.end(), buffer.data(), buffer.data() + (buffer.size() - strm.avail_out));
  } while (rc != Z_STREAM_END);
  deflateEnd(&strm);
  return out;
}

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<uint8_t> bytes(static_cast<size_t>(size));
  if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) throw IoError("failed reading " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

} // namespace ttn
