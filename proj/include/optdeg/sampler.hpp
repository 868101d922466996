#pragma once

#include <cstdint>
#include <vector>

#include "optdeg/errors.hpp"
#include "optdeg/field.hpp"

namespace optdeg {

/// splitmix64 stream (Steele, Lea, Flood). Every seeded choice in the library flows
/// through this generator so results are reproducible from (seed, prime).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

  /// Uniform integer in [lo, hi] by rejection (no modulo bias).
  long long uniform(long long lo, long long hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(next());
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<long long>(x % span);
  }

  /// Nonzero uniform integer in [-bound, bound].
  long long nonzero(long long bound) noexcept {
    long long v;
    do {
      v = uniform(-bound, bound);
    } while (v == 0);
    return v;
  }

  /// Derives an independent child stream.
  SplitMix64 fork(std::uint64_t salt) noexcept { return SplitMix64(next() ^ (salt * 0xD1B54A32D192ED03ULL)); }

 private:
  std::uint64_t state_;
};

inline constexpr long long kDefaultSampleBound = 1'000'000;

/// Reproducible generic data: values are a function of (seed, bound) only.
struct DataPoint {
  std::vector<long long> values;
  std::uint64_t seed = 0;
  long long bound = kDefaultSampleBound;
};

/// `count` integers uniform on [-bound, bound] from the splitmix64 stream seeded by `seed`.
inline DataPoint sample_generic(std::uint64_t seed, std::size_t count, long long bound = kDefaultSampleBound) {
  if (bound < 1000) throw DomainError("sample_generic", "bound must be at least 1000");
  SplitMix64 rng(seed);
  DataPoint dp;
  dp.seed = seed;
  dp.bound = bound;
  dp.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) dp.values.push_back(rng.uniform(-bound, bound));
  return dp;
}

/// A prime in (2^20, 2^31) drawn from the stream.
inline std::uint32_t random_prime(SplitMix64& rng) {
  std::uint64_t candidate = static_cast<std::uint64_t>(rng.uniform((1LL << 30), (1LL << 31) - 1000)) | 1U;
  while (!is_probable_prime(candidate)) candidate += 2;
  return static_cast<std::uint32_t>(candidate);
}

inline std::uint32_t prime_for_seed(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x5DEECE66DULL);
  return random_prime(rng);
}

}  // namespace optdeg
