#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zipcal/corpus.hpp"

namespace zipcal {

using EmbeddingVector = std::vector<double>;

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

// Signed feature-hashing embedding of a token sequence:
//   bucket = fnv1a64(token) % dim, sign from splitmix64 of the same hash,
//   one increment per occurrence, then L2 normalization.
// An empty token sequence embeds as the zero vector.
EmbeddingVector embed_sample(const Sample& sample, const InternTable& intern,
                             std::size_t dim = kDefaultEmbeddingDim);

// Squared Euclidean distance. Comparisons happen on squared values; callers
// take a square root only when reporting a radius.
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace zipcal
