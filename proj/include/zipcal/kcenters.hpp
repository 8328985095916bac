#pragma once

#include <cstdint>
#include <vector>

#include "zipcal/embedding.hpp"
#include "zipcal/selection.hpp"

namespace zipcal {

struct KCentersResult {
  // Positions into the candidate pool, in pick order.
  std::vector<std::uint32_t> indices;
  // Euclidean distance from each pick (after the first) to the nearest
  // previously chosen center, so radii.size() == indices.size() - 1 when any
  // pick happened. Non-increasing by construction.
  std::vector<double> radii;
  std::uint64_t distance_evaluations = 0;
};

// Greedy farthest-point k-centers over embedding vectors. The first center is
// drawn uniformly from the pool with the seeded generator; every later pick
// maximizes the distance to its nearest chosen center, ties broken by lowest
// pool position. Selects min(k, pool size) centers.
KCentersResult kcenters_select(const std::vector<EmbeddingVector>& pool, std::uint32_t k,
                               std::uint64_t seed, Engine engine = Engine::Parallel);

}  // namespace zipcal
