#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zipcal/corpus.hpp"
#include "zipcal/selection.hpp"

namespace zipcal {

struct RankEntry {
  std::uint32_t rank = 0;  // 1-based
  TokenId token = 0;
  std::uint64_t count = 0;
};

struct FrequencyTable {
  std::vector<RankEntry> ranks;  // count descending, ties by token id
  std::uint64_t total_tokens = 0;
  std::size_t distinct_types() const { return ranks.size(); }
};

// Exact occurrence counts over the samples' sanitized, truncated token
// streams, ranked. The sample-ids overload restricts counting to a selection.
FrequencyTable frequency_table(const Dataset& dataset);
FrequencyTable frequency_table(const Dataset& dataset, std::span<const std::uint32_t> sample_ids);

// Table from raw per-token-id counts; zero entries are omitted.
FrequencyTable table_from_counts(std::span<const std::uint64_t> counts);

inline constexpr std::uint32_t kDefaultFitRankCap = 10000;

struct ZipfFit {
  double exponent = 0.0;   // negated slope of log count vs log rank
  double intercept = 0.0;  // natural-log space
  double r_squared = 0.0;
  std::uint32_t ranks_used = 0;
};

// Least-squares line through (log rank, log count) over ranks
// [1, min(table size, rank_cap)]. The cap keeps the far tail, which departs
// from the power law, out of the estimate. DataError below 10 distinct types.
ZipfFit zipf_fit(const FrequencyTable& table, std::uint32_t rank_cap = kDefaultFitRankCap);

struct CoverageReport {
  std::string dataset;
  std::string method;
  std::uint32_t k = 0;             // realized selection size
  std::uint64_t covered_types = 0;
  std::uint64_t total_types = 0;
  double fraction = 0.0;           // 1.0 when total_types == 0
  std::vector<double> curve;       // per-step fractions, non-decreasing
};

// Recomputes the cumulative coverage curve from result.indices alone and
// checks it against the stored trace; a mismatch means a selector bug and
// throws DataError. Empty selections are allowed (fraction 0 unless the
// dataset vocabulary is empty too).
CoverageReport coverage_report(const Dataset& dataset, const SelectionResult& result);

struct ComparisonRow {
  std::string method;
  std::uint32_t k = 0;
  std::uint32_t runs = 0;
  double mean_fraction = 0.0;
  double min_fraction = 0.0;
  double max_fraction = 0.0;
};

// Aggregates reports into one row per (method, k), sorted by mean fraction
// descending (ties by method name, then k). Mixed datasets are a UsageError.
std::vector<ComparisonRow> compare_methods(std::span<const CoverageReport> reports);

}  // namespace zipcal
