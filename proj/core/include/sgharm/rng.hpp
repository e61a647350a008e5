#pragma once

#include <cstdint>
#include <random>

namespace sgharm {

/// Deterministic random source. The engine (std::mt19937_64) is fully
/// specified by the standard, and all derived draws below avoid the
/// implementation-defined standard distributions, so identical seeds give
/// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream; lets parallel work partition the seed space.
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace sgharm
