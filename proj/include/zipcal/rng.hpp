#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace zipcal {

// Seeded generator wrapper. Only raw mt19937_64 outputs are consumed, and the
// derived draws below are implemented by hand: the standard distribution
// classes are implementation-defined, which would break run-to-run
// reproducibility of manifests across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t bounded(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t m = (kMax % n + 1) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = next_u64();
      if (m == 0 || x <= kMax - m) return x % n;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// k distinct values from [0, n), uniform without replacement, in draw order.
std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k, Rng& rng);

}  // namespace zipcal
