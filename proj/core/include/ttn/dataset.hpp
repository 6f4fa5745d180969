#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace ttn {

/// Labeled images with pixels normalized to [0,1] and 1-indexed class
/// labels. Pixel storage is flat (image-major, raster order) and immutable
/// after construction.
struct ImageSet {
  std::vector<double> pixels;
  std::vector<uint16_t> labels;
  size_t height = 0;
  size_t width = 0;
  std::string name;

  size_t size() const { return labels.size(); }
  size_t pixels_per_image() const { return height * width; }
  std::span<const double> image(size_t i) const {
    return {pixels.data() + i * pixels_per_image(), pixels_per_image()};
  }
  uint16_t label(size_t i) const { return labels[i]; }
};

/// Decode an images + labels IDX pair into an ImageSet (bytes scaled by
/// 1/255, label bytes 0..9 shifted to classes 1..10).
ImageSet load_image_set(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path,
                        const std::string& name);

/// Bilinear resample with pixel-center alignment; output clamped to [0,1].
std::vector<double> bilinear_resize(std::span<const double> src, size_t src_h,
                                    size_t src_w, size_t dst_h, size_t dst_w);

/// The 28x28 -> 16x16 reduction used before feeding images to the tree.
std::vector<double> downsample(std::span<const double> image);

ImageSet resize_set(const ImageSet& set, size_t dst_h, size_t dst_w);

struct SplitSpec {
  size_t train_count = 55000;
  size_t val_count = 5000;
  size_t test_count = 10000;
  uint64_t shuffle_seed = 0;
};

struct Splits {
  ImageSet train, val, test;
};

/// Draw train and validation sets from the training source by seeded
/// shuffle; the test set passes through in file order. The selections are
/// disjoint by construction.
Splits make_splits(const ImageSet& train_source, const ImageSet& test_source,
                   const SplitSpec& spec);

} // namespace ttn
