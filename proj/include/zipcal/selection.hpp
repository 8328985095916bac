#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zipcal/corpus.hpp"

namespace zipcal {

// Every data-parallel kernel has a plain serial implementation and an OpenMP
// one. Both are required to produce bit-identical results; the serial path is
// the reference the tests compare against.
enum class Engine { Serial, Parallel };

std::string to_string(Engine engine);
Engine engine_from_string(std::string_view name);

// Membership bitset over interned token ids, with a running count.
class CoveredSet {
 public:
  explicit CoveredSet(std::size_t universe)
      : bits_((universe + 63) / 64, 0), count_(0) {}

  bool test(TokenId id) const {
    return (bits_[id >> 6] >> (id & 63)) & 1u;
  }
  void insert(TokenId id) {
    std::uint64_t& word = bits_[id >> 6];
    const std::uint64_t mask = 1ULL << (id & 63);
    if (!(word & mask)) {
      word |= mask;
      ++count_;
    }
  }
  std::size_t count() const { return count_; }
  std::vector<TokenId> to_sorted_ids() const;

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t count_;
};

// |sample_vocab \ covered|
std::uint32_t marginal_gain(std::span<const TokenId> sample_vocab, const CoveredSet& covered);

// Single shared definition so selectors and the independent coverage
// recomputation agree bit for bit. An empty universe counts as fully covered.
inline double coverage_fraction(std::size_t covered_count, std::size_t total_types) {
  if (total_types == 0) return 1.0;
  return static_cast<double>(covered_count) / static_cast<double>(total_types);
}

struct SelectionResult {
  std::string method;                    // "zipcal" or "random"
  std::vector<std::uint32_t> indices;    // selected sample ids, in pick order
  std::vector<std::uint32_t> gains;      // per-step new-type counts
  std::vector<double> coverage;          // per-step |covered| / |full_vocab|
  std::vector<TokenId> covered_final;    // sorted
  std::optional<std::uint64_t> seed;     // random baseline / pooled scans
  std::uint64_t evaluations = 0;         // candidate gain evaluations
  double wall_seconds = 0.0;             // selection loop only
};

struct SelectOptions {
  Engine engine = Engine::Parallel;
  // 0 scans every unselected sample (the default; the only mode whose
  // evaluation count follows the closed form k*n - k(k+1)/2 + k). A positive
  // value draws that many candidates per iteration from a seeded generator.
  std::uint32_t pool_size = 0;
  std::uint64_t pool_seed = 0;
};

// Greedy maximal-marginal vocabulary selection. Picks min(k, n) samples; each
// step takes the unselected sample maximizing |V(s) \ covered|, ties broken by
// larger |V(s)|, then by smaller sample id. Fully deterministic.
SelectionResult select_zipcal(const Dataset& dataset, std::uint32_t k,
                              const SelectOptions& options = {});

// Uniform baseline: k distinct indices without replacement from a seeded
// generator, with the gain/coverage trace computed for the sampled order.
SelectionResult select_random(const Dataset& dataset, std::uint32_t k, std::uint64_t seed);

}  // namespace zipcal
