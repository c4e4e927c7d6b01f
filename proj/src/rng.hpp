#ifndef DESCQA_RNG_HPP
#define DESCQA_RNG_HPP

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace descqa {

// Deterministic 64-bit generator (splitmix64). The standard <random>
// distributions are implementation-defined, so every draw in the pipeline
// goes through this class to keep outputs byte-identical across platforms
// and standard library versions.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n); n must be > 0. Lemire multiply-shift with
  // rejection.
  uint64_t below(uint64_t n) {
    uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

private:
  uint64_t state_;
};

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// FNV-1a; used for shard assignment, cache keys and config hashes.
inline uint64_t fnv1a64(std::string_view s, uint64_t h = 0xCBF29CE484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Per-sample seed: a pure function of (global seed, sample id, stream label),
// so results never depend on shard count, worker count or scheduling order.
inline uint64_t sample_seed(uint64_t global_seed, int64_t question_id,
                            std::string_view stream = {}) {
  uint64_t h = mix64(global_seed ^ 0x6A09E667F3BCC909ULL);
  h = mix64(h ^ static_cast<uint64_t>(question_id));
  if (!stream.empty()) h = mix64(h ^ fnv1a64(stream));
  return h;
}

}  // namespace descqa

#endif
