#pragma once

#include <cstdint>

namespace percolab {

// splitmix64 finalizer; all randomness in the lab flows through this mixer so
// that every draw is a pure function of (seed, counter key).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t key) {
  return mix64(mix64(seed) ^ key);
}

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2) {
  return mix64(mix64(mix64(seed) ^ k1) ^ k2);
}

// Uniform double in [0,1) from the top 53 bits.
inline double to_unit(std::uint64_t u) {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Deterministic derivation of per-replicate seeds.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t replicate) {
  return mix64(seed, 0x7265706c69636174ull, replicate);
}

// Sequential counter-based stream for chain simulations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), counter_(0) {}

  std::uint64_t next_u64() { return mix64(seed_, counter_++); }
  double next_unit() { return to_unit(next_u64()); }

  // Uniform index in [0, n) via 128-bit multiply (Lemire); deterministic.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace percolab
