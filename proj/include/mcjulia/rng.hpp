#pragma once

// Seedable random source for all sampling in tests, verification and
// equivalence checks. Doubles are assembled from the top 53 bits of the raw
// generator output; std::uniform_real_distribution is deliberately avoided
// because its output is not pinned down by the standard and differs between
// library implementations, which would break bit-reproducible reports.

#include <cstdint>
#include <random>

namespace mcjulia {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mcjulia
