#include "zipcal/rng.hpp"

#include <string>
#include <utility>

#include "zipcal/errors.hpp"

namespace zipcal {

std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k, Rng& rng) {
  if (k > n) {
    throw UsageError("cannot draw " + std::to_string(k) + " distinct samples from " +
                     std::to_string(n));
  }
  // Partial Fisher-Yates; the first k slots are the draw, in draw order.
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + rng.bounded(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace zipcal
