#include "zipcal/kcenters.hpp"

#include <algorithm>
#include <cmath>

#include "zipcal/errors.hpp"
#include "zipcal/rng.hpp"

namespace zipcal {
namespace {

// Farthest-point argmax over unselected pool entries: larger cached
// min-distance wins, ties go to the lower pool position. The cached doubles
// are bit-identical across engines (per-element updates in fixed center
// order, no reassociation), so the argmax is too.
std::size_t farthest(const std::vector<double>& min_sq, const std::vector<char>& selected,
                     Engine engine) {
  const std::size_t n = min_sq.size();
  const auto better = [&](std::size_t a, std::size_t b) {
    // a beats b; b == n means "nothing yet".
    if (b == n) return true;
    if (min_sq[a] != min_sq[b]) return min_sq[a] > min_sq[b];
    return a < b;
  };

  std::size_t best = n;
  if (engine == Engine::Parallel) {
#ifdef ZIPCAL_HAVE_OPENMP
#pragma omp parallel
    {
      std::size_t local = n;
#pragma omp for schedule(static) nowait
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const std::size_t pos = static_cast<std::size_t>(i);
        if (!selected[pos] && better(pos, local)) local = pos;
      }
#pragma omp critical
      {
        if (local != n && better(local, best)) best = local;
      }
    }
    return best;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!selected[i] && better(i, best)) best = i;
  }
  return best;
}

}  // namespace

KCentersResult kcenters_select(const std::vector<EmbeddingVector>& pool, std::uint32_t k,
                               std::uint64_t seed, Engine engine) {
  if (k < 1) throw UsageError("k must be at least 1");
  if (pool.empty()) throw UsageError("k-centers needs a non-empty pool");
  const std::size_t n = pool.size();
  const std::size_t dim = pool[0].size();
  for (const EmbeddingVector& v : pool) {
    if (v.size() != dim) throw UsageError("pool embeddings disagree on dimension");
  }

  const std::size_t picks = std::min<std::size_t>(k, n);
  KCentersResult result;
  result.indices.reserve(picks);
  result.radii.reserve(picks > 0 ? picks - 1 : 0);

  Rng rng(seed);
  std::size_t current = static_cast<std::size_t>(rng.bounded(n));
  std::vector<char> selected(n, 0);
  std::vector<double> min_sq(n, 0.0);
  selected[current] = 1;
  result.indices.push_back(static_cast<std::uint32_t>(current));

  const auto update_min = [&](std::size_t center, bool first) {
    const std::span<const double> c(pool[center]);
    if (engine == Engine::Parallel) {
#ifdef ZIPCAL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const std::size_t pos = static_cast<std::size_t>(i);
        const double d = squared_distance(pool[pos], c);
        if (first || d < min_sq[pos]) min_sq[pos] = d;
      }
      result.distance_evaluations += n;
      return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double d = squared_distance(pool[i], c);
      if (first || d < min_sq[i]) min_sq[i] = d;
    }
    result.distance_evaluations += n;
  };

  for (std::size_t step = 1; step < picks; ++step) {
    update_min(current, step == 1);
    const std::size_t next = farthest(min_sq, selected, engine);
    result.radii.push_back(std::sqrt(min_sq[next]));
    selected[next] = 1;
    result.indices.push_back(static_cast<std::uint32_t>(next));
    current = next;
  }
  return result;
}

}  // namespace zipcal
