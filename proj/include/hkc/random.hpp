#pragma once

#include <cstdint>
#include <random>

namespace hkc {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` under `master_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Per-trial random source. Never shared between threads.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Conversions to doubles and bounded integers are done here rather
/// than through <random> distributions so that streams are bit-identical
/// across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t index)
      : RandomStream(derive_seed(master_seed, index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Exponential with the given positive rate.
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hkc
