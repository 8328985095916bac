#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zipcal/kcenters.hpp"
#include "zipcal/selection.hpp"

namespace zipcal {

// One entry of the consolidated pool: a sample addressed by domain.
struct PoolEntry {
  std::uint32_t domain = 0;  // position in the datasets span
  std::uint32_t sample = 0;  // sample id within that domain
};

struct MultiOptions {
  Engine engine = Engine::Parallel;
  // Per-domain pool size for stage one. 0 means "same as k".
  std::uint32_t pool_size = 0;
  std::size_t embedding_dim = kDefaultEmbeddingDim;
  std::uint64_t seed = 0;
};

struct MultiSelectionResult {
  std::vector<std::string> domain_names;
  // Stage one: one greedy selection per domain, in domain order.
  std::vector<SelectionResult> pool_results;
  // Consolidated pool, concatenated in domain order (selection order within
  // each domain preserved).
  std::vector<PoolEntry> pool;
  // Stage two: k-centers picks as positions into `pool`, plus the resolved
  // domain/sample addresses in pick order.
  std::vector<std::uint32_t> center_positions;
  std::vector<PoolEntry> selected;
  std::vector<double> radii;
  std::uint64_t seed = 0;
  std::size_t embedding_dim = 0;
  std::uint64_t stage1_evaluations = 0;  // summed over domains
  std::uint64_t stage2_evaluations = 0;  // distance evaluations
  double wall_seconds = 0.0;
};

// Hierarchical multi-domain selection: an independent greedy vocabulary pass
// per domain builds pools of `pool_size` samples, the pools are concatenated,
// and greedy k-centers over hashed embeddings picks the final k.
MultiSelectionResult select_multidomain(std::span<const Dataset> datasets, std::uint32_t k,
                                        const InternTable& intern,
                                        const MultiOptions& options = {});

}  // namespace zipcal
