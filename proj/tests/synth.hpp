#pragma once

// Synthetic datasets for tests: 10 blob classes on a grayscale canvas,
// learnable by a small classifier in a couple of epochs.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "ttn/dataset.hpp"
#include "ttn/idx.hpp"
#include "ttn/rng.hpp"

namespace ttn::synth {

// Class l (1..10) places a Gaussian blob at a fixed grid position.
inline std::vector<double> blob_image(size_t h, size_t w, uint16_t label, Rng& rng) {
  const size_t cell = (label - 1) % 10;
  const double cy = (0.5 + static_cast<double>(cell / 5)) * static_cast<double>(h) / 2.0;
  const double cx = (0.5 + static_cast<double>(cell % 5)) * static_cast<double>(w) / 5.0;
  const double sigma = static_cast<double>(std::min(h, w)) / 9.0;

  std::vector<double> img(h * w);
  for (size_t r = 0; r < h; ++r)
    for (size_t c = 0; c < w; ++c) {
      const double dy = (static_cast<double>(r) - cy) / sigma;
      const double dx = (static_cast<double>(c) - cx) / sigma;
      double v = std::exp(-0.5 * (dx * dx + dy * dy));
      v += 0.08 * rng.uniform(); // mild noise
      img[r * w + c] = std::clamp(v, 0.0, 1.0);
    }
  return img;
}

inline ImageSet blob_set(size_t count, size_t h, size_t w, uint64_t seed,
                         const std::string& name = "synth") {
  Rng rng(seed);
  ImageSet set;
  set.name = name;
  set.height = h;
  set.width = w;
  set.labels.reserve(count);
  set.pixels.reserve(count * h * w);
  for (size_t i = 0; i < count; ++i) {
    const uint16_t label = static_cast<uint16_t>(1 + i % 10);
    set.labels.push_back(label);
    const auto img = blob_image(h, w, label, rng);
    set.pixels.insert(set.pixels.end(), img.begin(), img.end());
  }
  return set;
}

// Write a MNIST-shaped IDX corpus (train + t10k files) under dir.
inline void write_blob_idx_corpus(const std::filesystem::path& dir, size_t n_train,
                                  size_t n_test, size_t h, size_t w, uint64_t seed,
                                  bool gzipped = false) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);

  auto emit = [&](const std::string& images_name, const std::string& labels_name,
                  size_t count) {
    IdxData images;
    images.dims = {static_cast<uint32_t>(count), static_cast<uint32_t>(h),
                   static_cast<uint32_t>(w)};
    images.payload.reserve(count * h * w);
    IdxData labels;
    labels.dims = {static_cast<uint32_t>(count)};
    labels.payload.reserve(count);

    for (size_t i = 0; i < count; ++i) {
      const uint16_t label = static_cast<uint16_t>(1 + i % 10);
      labels.payload.push_back(static_cast<uint8_t>(label - 1));
      for (double v : blob_image(h, w, label, rng))
        images.payload.push_back(static_cast<uint8_t>(std::lround(v * 255.0)));
    }

    auto write = [&](const std::string& name, const IdxData& data) {
      auto bytes = serialize_idx(data);
      if (gzipped) {
        const auto gz = gzip_bytes(bytes);
        write_file_bytes(dir / (name + ".gz"), gz);
      } else {
        write_file_bytes(dir / name, bytes);
      }
    };
    write(images_name, images);
    write(labels_name, labels);
  };

  emit("train-images-idx3-ubyte", "train-labels-idx1-ubyte", n_train);
  emit("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte", n_test);
}

} // namespace ttn::synth
