#include "zipcal/embedding.hpp"

#include <cmath>

#include "zipcal/errors.hpp"
#include "zipcal/hash.hpp"

namespace zipcal {

EmbeddingVector embed_sample(const Sample& sample, const InternTable& intern, std::size_t dim) {
  if (dim < 2) throw UsageError("embedding dimension must be at least 2");
  EmbeddingVector vec(dim, 0.0);
  for (TokenId id : sample.tokens) {
    // Hash the token text, not the id: the embedding must not depend on the
    // order the intern table assigned identifiers in.
    const std::uint64_t h = fnv1a64(intern.text(id));
    const std::size_t bucket = static_cast<std::size_t>(h % dim);
    const double sign = (splitmix64(h) & 1u) ? 1.0 : -1.0;
    vec[bucket] += sign;
  }
  double norm_sq = 0.0;
  for (double v : vec) norm_sq += v * v;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : vec) v *= inv;
  }
  return vec;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace zipcal
