#include "zipcal/selection.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include "zipcal/errors.hpp"
#include "zipcal/rng.hpp"

namespace zipcal {
namespace {

// Strict total order over candidates: higher gain, then larger vocabulary,
// then lower sample id. Sample ids are distinct, so any set of candidates has
// a unique maximum and partial argmaxes can be combined in any order.
struct Candidate {
  std::uint32_t gain = 0;
  std::uint32_t vocab_size = 0;
  std::uint32_t id = 0;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.gain != b.gain) return a.gain > b.gain;
  if (a.vocab_size != b.vocab_size) return a.vocab_size > b.vocab_size;
  return a.id < b.id;
}

// Argmax of marginal gain over `positions` entries of `candidates`. Returns
// the winning position. Serial and parallel paths evaluate the same set and
// apply the same total order, so they pick identical winners.
std::size_t scan_best(const Dataset& dataset, const std::vector<std::uint32_t>& candidates,
                      const std::vector<std::uint32_t>& positions, const CoveredSet& covered,
                      Engine engine, Candidate& winner) {
  const auto evaluate = [&](std::size_t p) {
    const Sample& sample = dataset.samples[candidates[positions[p]]];
    return Candidate{marginal_gain(sample.vocab, covered),
                     static_cast<std::uint32_t>(sample.vocab.size()), sample.id};
  };

  const std::size_t count = positions.size();
  Candidate best = evaluate(0);
  std::size_t best_pos = 0;

  if (engine == Engine::Parallel) {
#ifdef ZIPCAL_HAVE_OPENMP
#pragma omp parallel
    {
      Candidate local{};
      std::size_t local_pos = count;  // sentinel: nothing seen yet
#pragma omp for schedule(static) nowait
      for (long long p = 1; p < static_cast<long long>(count); ++p) {
        Candidate c = evaluate(static_cast<std::size_t>(p));
        if (local_pos == count || better(c, local)) {
          local = c;
          local_pos = static_cast<std::size_t>(p);
        }
      }
#pragma omp critical
      {
        if (local_pos != count && better(local, best)) {
          best = local;
          best_pos = local_pos;
        }
      }
    }
    winner = best;
    return best_pos;
#endif
  }

  for (std::size_t p = 1; p < count; ++p) {
    Candidate c = evaluate(p);
    if (better(c, best)) {
      best = c;
      best_pos = p;
    }
  }
  winner = best;
  return best_pos;
}

}  // namespace

std::vector<TokenId> CoveredSet::to_sorted_ids() const {
  std::vector<TokenId> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      out.push_back(static_cast<TokenId>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

std::uint32_t marginal_gain(std::span<const TokenId> sample_vocab, const CoveredSet& covered) {
  std::uint32_t gain = 0;
  for (TokenId id : sample_vocab) {
    gain += covered.test(id) ? 0u : 1u;
  }
  return gain;
}

std::string to_string(Engine engine) {
  return engine == Engine::Serial ? "serial" : "parallel";
}

Engine engine_from_string(std::string_view name) {
  if (name == "serial") return Engine::Serial;
  if (name == "parallel") return Engine::Parallel;
  throw UsageError("unknown engine: " + std::string(name) + " (expected serial or parallel)");
}

SelectionResult select_zipcal(const Dataset& dataset, std::uint32_t k,
                              const SelectOptions& options) {
  if (k < 1) throw UsageError("k must be at least 1");
  const std::size_t n = dataset.size();
  if (n == 0) throw UsageError("cannot select from an empty dataset");

  const std::uint32_t picks = static_cast<std::uint32_t>(std::min<std::size_t>(k, n));
  const std::size_t universe =
      dataset.full_vocab.empty() ? 0 : static_cast<std::size_t>(dataset.full_vocab.back()) + 1;

  SelectionResult result;
  result.method = "zipcal";
  result.indices.reserve(picks);
  result.gains.reserve(picks);
  result.coverage.reserve(picks);
  if (options.pool_size > 0) result.seed = options.pool_seed;

  std::vector<std::uint32_t> candidates(n);
  for (std::size_t i = 0; i < n; ++i) candidates[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> positions;
  CoveredSet covered(universe);
  Rng pool_rng(options.pool_seed);

  const auto start = std::chrono::steady_clock::now();
  for (std::uint32_t step = 0; step < picks; ++step) {
    const std::uint32_t remaining = static_cast<std::uint32_t>(candidates.size());
    if (options.pool_size == 0 || options.pool_size >= remaining) {
      positions.resize(remaining);
      for (std::uint32_t p = 0; p < remaining; ++p) positions[p] = p;
    } else {
      positions = sample_without_replacement(remaining, options.pool_size, pool_rng);
    }
    result.evaluations += positions.size();

    Candidate winner;
    const std::size_t winner_pos = scan_best(dataset, candidates, positions, covered,
                                             options.engine, winner);
    const std::uint32_t chosen = candidates[positions[winner_pos]];
    for (TokenId id : dataset.samples[chosen].vocab) covered.insert(id);
    result.indices.push_back(chosen);
    result.gains.push_back(winner.gain);
    result.coverage.push_back(coverage_fraction(covered.count(), dataset.full_vocab.size()));
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(positions[winner_pos]));
  }
  const auto stop = std::chrono::steady_clock::now();

  result.covered_final = covered.to_sorted_ids();
  result.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

SelectionResult select_random(const Dataset& dataset, std::uint32_t k, std::uint64_t seed) {
  if (k < 1) throw UsageError("k must be at least 1");
  const std::size_t n = dataset.size();
  if (k > n) {
    throw UsageError("random selection of " + std::to_string(k) + " samples from " +
                     std::to_string(n) + " requires k <= n");
  }

  const std::size_t universe =
      dataset.full_vocab.empty() ? 0 : static_cast<std::size_t>(dataset.full_vocab.back()) + 1;

  SelectionResult result;
  result.method = "random";
  result.seed = seed;

  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  result.indices = sample_without_replacement(static_cast<std::uint32_t>(n), k, rng);
  CoveredSet covered(universe);
  for (std::uint32_t id : result.indices) {
    const Sample& sample = dataset.samples[id];
    const std::uint32_t gain = marginal_gain(sample.vocab, covered);
    for (TokenId t : sample.vocab) covered.insert(t);
    result.gains.push_back(gain);
    result.coverage.push_back(coverage_fraction(covered.count(), dataset.full_vocab.size()));
    ++result.evaluations;
  }
  const auto stop = std::chrono::steady_clock::now();

  result.covered_final = covered.to_sorted_ids();
  result.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

}  // namespace zipcal
