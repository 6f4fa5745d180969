#include "ttn/rng.hpp"

#include <cmath>
#include <numbers>

namespace ttn {

namespace {

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::bounded(uint64_t n) {
  // Multiply-shift range reduction; the 2^-64 bias is irrelevant here.
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

std::pair<double, double> Rng::normal_pair(double mean, double stddev) {
  // Box-Muller on u1 in (0,1] so the log never sees zero.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {mean + stddev * radius * std::cos(angle),
          mean + stddev * radius * std::sin(angle)};
}

uint64_t Rng::mix(uint64_t seed, uint64_t tag) {
  uint64_t x = seed;
  uint64_t a = splitmix64(x);
  uint64_t y = a ^ rotl(tag, 31);
  return splitmix64(y);
}

std::vector<size_t> iota_indices(size_t n) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

void shuffle_indices(std::span<size_t> idx, Rng& rng) {
  for (size_t i = idx.size(); i > 1; --i) {
    const size_t j = rng.bounded(i);
    std::swap(idx[i - 1], idx[j]);
  }
}

} // namespace ttn
