#include "ttn/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "ttn/errors.hpp"
#include "ttn/idx.hpp"
#include "ttn/rng.hpp"

namespace ttn {

ImageSet load_image_set(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path,
                        const std::string& name) {
  const IdxData images = read_idx_file(images_path);
  const IdxData labels = read_idx_file(labels_path);

  if (images.dims.size() != 3)
    throw ParseError(images_path.string() + ": expected a 3-dimensional image container");
  if (labels.dims.size() != 1)
    throw ParseError(labels_path.string() + ": expected a 1-dimensional label container");
  if (images.dims[0] != labels.dims[0])
    throw ParseError("image/label count mismatch: " + std::to_string(images.dims[0]) +
                     " vs " + std::to_string(labels.dims[0]));

  ImageSet set;
  set.name = name;
  set.height = images.dims[1];
  set.width = images.dims[2];
  set.pixels.resize(images.payload.size());
  for (size_t i = 0; i < images.payload.size(); ++i)
    set.pixels[i] = static_cast<double>(images.payload[i]) / 255.0;
  set.labels.resize(labels.payload.size());
  for (size_t i = 0; i < labels.payload.size(); ++i)
    set.labels[i] = static_cast<uint16_t>(labels.payload[i] + 1);
  return set;
}

std::vector<double> bilinear_resize(std::span<const double> src, size_t src_h,
                                    size_t src_w, size_t dst_h, size_t dst_w) {
  if (src.size() != src_h * src_w)
    throw ShapeError("bilinear_resize: source has " + std::to_string(src.size()) +
                     " pixels, expected " + std::to_string(src_h * src_w));
  if (dst_h == 0 || dst_w == 0) throw ShapeError("bilinear_resize: empty target shape");

  std::vector<double> dst(dst_h * dst_w);
  const double sy = static_cast<double>(src_h) / static_cast<double>(dst_h);
  const double sx = static_cast<double>(src_w) / static_cast<double>(dst_w);

  for (size_t r = 0; r < dst_h; ++r) {
    const double y = (static_cast<double>(r) + 0.5) * sy - 0.5;
    const double yc = std::clamp(y, 0.0, static_cast<double>(src_h - 1));
    const size_t y0 = static_cast<size_t>(yc);
    const size_t y1 = std::min(y0 + 1, src_h - 1);
    const double fy = yc - static_cast<double>(y0);
    for (size_t c = 0; c < dst_w; ++c) {
      const double x = (static_cast<double>(c) + 0.5) * sx - 0.5;
      const double xc = std::clamp(x, 0.0, static_cast<double>(src_w - 1));
      const size_t x0 = static_cast<size_t>(xc);
      const size_t x1 = std::min(x0 + 1, src_w - 1);
      const double fx = xc - static_cast<double>(x0);

      const double top = src[y0 * src_w + x0] * (1.0 - fx) + src[y0 * src_w + x1] * fx;
      const double bot = src[y1 * src_w + x0] * (1.0 - fx) + src[y1 * src_w + x1] * fx;
      dst[r * dst_w + c] = std::clamp(top * (1.0 - fy) + bot * fy, 0.0, 1.0);
    }
  }
  return dst;
}

std::vector<double> downsample(std::span<const double> image) {
  if (image.size() != 28 * 28)
    throw ShapeError("downsample: expected a 28x28 image, got " +
                     std::to_string(image.size()) + " pixels");
  return bilinear_resize(image, 28, 28, 16, 16);
}

ImageSet resize_set(const ImageSet& set, size_t dst_h, size_t dst_w) {
  ImageSet out;
  out.name = set.name;
  out.height = dst_h;
  out.width = dst_w;
  out.labels = set.labels;
  out.pixels.resize(set.size() * dst_h * dst_w);
  for (size_t i = 0; i < set.size(); ++i) {
    const std::vector<double> resized =
        bilinear_resize(set.image(i), set.height, set.width, dst_h, dst_w);
    std::copy(resized.begin(), resized.end(), out.pixels.begin() + i * dst_h * dst_w);
  }
  return out;
}

namespace {

ImageSet gather(const ImageSet& src, std::span<const size_t> idx, const std::string& tag) {
  ImageSet out;
  out.name = src.name.empty() ? tag : src.name + "/" + tag;
  out.height = src.height;
  out.width = src.width;
  out.labels.reserve(idx.size());
  out.pixels.reserve(idx.size() * src.pixels_per_image());
  for (size_t i : idx) {
    out.labels.push_back(src.labels[i]);
    const auto img = src.image(i);
    out.pixels.insert(out.pixels.end(), img.begin(), img.end());
  }
  return out;
}

} // namespace

Splits make_splits(const ImageSet& train_source, const ImageSet& test_source,
                   const SplitSpec& spec) {
  if (spec.train_count + spec.val_count > train_source.size())
    throw ConfigError("make_splits: train_count + val_count = " +
                      std::to_string(spec.train_count + spec.val_count) +
                      " exceeds training source size " +
                      std::to_string(train_source.size()));
  if (spec.test_count > test_source.size())
    throw ConfigError("make_splits: test_count = " + std::to_string(spec.test_count) +
                      " exceeds test source size " + std::to_string(test_source.size()));
  if (spec.train_count == 0) throw ConfigError("make_splits: train_count must be >= 1");

  std::vector<size_t> perm = iota_indices(train_source.size());
  Rng rng(spec.shuffle_seed);
  shuffle_indices(perm, rng);

  Splits splits;
  splits.train = gather(train_source,
                        std::span(perm.data(), spec.train_count), "train");
  splits.val = gather(train_source,
                      std::span(perm.data() + spec.train_count, spec.val_count), "val");
  splits.test = gather(test_source, iota_indices(spec.test_count), "test");
  return splits;
}

} // namespace ttn
