#include "zipcal/multi.hpp"

#include <chrono>

#include "zipcal/embedding.hpp"
#include "zipcal/errors.hpp"

namespace zipcal {

MultiSelectionResult select_multidomain(std::span<const Dataset> datasets, std::uint32_t k,
                                        const InternTable& intern, const MultiOptions& options) {
  if (datasets.empty()) throw UsageError("multi-domain selection needs at least one domain");
  if (k < 1) throw UsageError("k must be at least 1");
  // Checked here, not just in embed_sample: an exception must not start
  // inside the parallel embedding loop.
  if (options.embedding_dim < 2) throw UsageError("embedding dimension must be at least 2");
  const std::uint32_t pool_size = options.pool_size == 0 ? k : options.pool_size;

  MultiSelectionResult result;
  result.seed = options.seed;
  result.embedding_dim = options.embedding_dim;
  result.domain_names.reserve(datasets.size());
  for (const Dataset& d : datasets) result.domain_names.push_back(d.name);

  const auto start = std::chrono::steady_clock::now();

  SelectOptions stage1;
  stage1.engine = options.engine;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    SelectionResult r = select_zipcal(datasets[d], pool_size, stage1);
    result.stage1_evaluations += r.evaluations;
    for (std::uint32_t idx : r.indices) {
      result.pool.push_back(PoolEntry{static_cast<std::uint32_t>(d), idx});
    }
    result.pool_results.push_back(std::move(r));
  }

  std::vector<EmbeddingVector> embeddings(result.pool.size());
#ifdef ZIPCAL_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (options.engine == Engine::Parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(result.pool.size()); ++i) {
    const PoolEntry& entry = result.pool[static_cast<std::size_t>(i)];
    embeddings[static_cast<std::size_t>(i)] =
        embed_sample(datasets[entry.domain].samples[entry.sample], intern, options.embedding_dim);
  }

  KCentersResult centers = kcenters_select(embeddings, k, options.seed, options.engine);
  result.center_positions = std::move(centers.indices);
  result.radii = std::move(centers.radii);
  result.stage2_evaluations = centers.distance_evaluations;
  result.selected.reserve(result.center_positions.size());
  for (std::uint32_t pos : result.center_positions) result.selected.push_back(result.pool[pos]);

  const auto stop = std::chrono::steady_clock::now();
  result.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

}  // namespace zipcal
