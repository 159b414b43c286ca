#pragma once

#include <cstdint>
#include <string_view>

namespace tomoreg {

/// Counter-based deterministic generator. Each (seed, counter) pair opens an
/// independent stream; draws within a stream are sequential splitmix64 steps.
/// Platform-independent by construction (pure 64-bit integer arithmetic).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  /// Stateful per-counter stream.
  class Stream {
   public:
    Stream(std::uint64_t seed, std::uint64_t counter)
        : state_(mix(seed ^ mix(counter + 0x517cc1b727220a95ull))) {}

    std::uint64_t next_u64() {
      state_ += 0x9e3779b97f4a7c15ull;
      return mix(state_);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

   private:
    std::uint64_t state_;
  };

  Stream stream(std::uint64_t counter) const { return Stream(seed_, counter); }

  /// One-shot uniform draw in [0, 1) for the given counter.
  double uniform(std::uint64_t counter) const { return Stream(seed_, counter).next_double(); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Derives a labeled sub-stream seed from a master seed (FNV-1a over the label).
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return CounterRng::mix(master ^ h);
}

}  // namespace tomoreg
