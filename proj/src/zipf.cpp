#include "zipcal/zipf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zipcal/errors.hpp"

namespace zipcal {
namespace {

std::size_t universe_of(const Dataset& dataset) {
  return dataset.full_vocab.empty() ? 0
                                    : static_cast<std::size_t>(dataset.full_vocab.back()) + 1;
}

FrequencyTable rank_counts(std::vector<std::uint64_t> counts) {
  FrequencyTable table;
  for (std::size_t id = 0; id < counts.size(); ++id) {
    if (counts[id] == 0) continue;
    table.ranks.push_back(RankEntry{0, static_cast<TokenId>(id), counts[id]});
    table.total_tokens += counts[id];
  }
  std::stable_sort(table.ranks.begin(), table.ranks.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     if (a.count != b.count) return a.count > b.count;
                     return a.token < b.token;
                   });
  for (std::size_t i = 0; i < table.ranks.size(); ++i) {
    table.ranks[i].rank = static_cast<std::uint32_t>(i + 1);
  }
  return table;
}

void accumulate(const Sample& sample, std::vector<std::uint64_t>& counts) {
  for (TokenId id : sample.tokens) ++counts[id];
}

}  // namespace

FrequencyTable frequency_table(const Dataset& dataset) {
  std::vector<std::uint64_t> counts(universe_of(dataset), 0);
  for (const Sample& sample : dataset.samples) accumulate(sample, counts);
  return rank_counts(std::move(counts));
}

FrequencyTable frequency_table(const Dataset& dataset,
                               std::span<const std::uint32_t> sample_ids) {
  std::vector<std::uint64_t> counts(universe_of(dataset), 0);
  for (std::uint32_t id : sample_ids) {
    if (id >= dataset.size()) {
      throw DataError("sample id " + std::to_string(id) + " out of range for dataset \"" +
                      dataset.name + "\" of size " + std::to_string(dataset.size()));
    }
    accumulate(dataset.samples[id], counts);
  }
  return rank_counts(std::move(counts));
}

FrequencyTable table_from_counts(std::span<const std::uint64_t> counts) {
  return rank_counts(std::vector<std::uint64_t>(counts.begin(), counts.end()));
}

ZipfFit zipf_fit(const FrequencyTable& table, std::uint32_t rank_cap) {
  if (rank_cap < 1) throw UsageError("rank cap must be positive");
  if (table.distinct_types() < 10) {
    throw DataError("Zipf fit needs at least 10 distinct types, got " +
                    std::to_string(table.distinct_types()));
  }
  const std::size_t r = std::min<std::size_t>(table.distinct_types(), rank_cap);

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    sx += std::log(static_cast<double>(i + 1));
    sy += std::log(static_cast<double>(table.ranks[i].count));
  }
  const double mx = sx / static_cast<double>(r);
  const double my = sy / static_cast<double>(r);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double dx = std::log(static_cast<double>(i + 1)) - mx;
    const double dy = std::log(static_cast<double>(table.ranks[i].count)) - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }

  ZipfFit fit;
  fit.ranks_used = static_cast<std::uint32_t>(r);
  const double slope = sxy / sxx;  // sxx > 0: at least 10 distinct ranks
  fit.exponent = -slope;
  fit.intercept = my - slope * mx;
  // A flat response leaves syy at rounding noise (the mean of identical
  // logs is off by ulps); such a fit has zero residual, so report 1.
  const double flat_noise = 1e-12 * static_cast<double>(r);
  fit.r_squared = syy <= flat_noise ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

CoverageReport coverage_report(const Dataset& dataset, const SelectionResult& result) {
  const std::size_t universe = universe_of(dataset);
  std::vector<char> seen_index(dataset.size(), 0);
  CoveredSet covered(universe);
  std::vector<double> curve;
  curve.reserve(result.indices.size());
  for (std::uint32_t id : result.indices) {
    if (id >= dataset.size()) {
      throw DataError("selection index " + std::to_string(id) + " out of range for dataset \"" +
                      dataset.name + "\" of size " + std::to_string(dataset.size()));
    }
    if (seen_index[id]) throw DataError("selection repeats sample " + std::to_string(id));
    seen_index[id] = 1;
    for (TokenId t : dataset.samples[id].vocab) covered.insert(t);
    curve.push_back(coverage_fraction(covered.count(), dataset.full_vocab.size()));
  }

  if (curve != result.coverage) {
    throw DataError("stored coverage trace disagrees with its recomputation for method \"" +
                    result.method + "\" on dataset \"" + dataset.name + "\"");
  }

  CoverageReport report;
  report.dataset = dataset.name;
  report.method = result.method;
  report.k = static_cast<std::uint32_t>(result.indices.size());
  report.covered_types = covered.count();
  report.total_types = dataset.full_vocab.size();
  report.fraction =
      curve.empty() ? coverage_fraction(0, report.total_types) : curve.back();
  report.curve = std::move(curve);
  return report;
}

std::vector<ComparisonRow> compare_methods(std::span<const CoverageReport> reports) {
  std::vector<ComparisonRow> rows;
  if (reports.empty()) return rows;
  const std::string& dataset = reports.front().dataset;
  for (const CoverageReport& r : reports) {
    if (r.dataset != dataset) {
      throw UsageError("cannot compare reports from different datasets: \"" + dataset +
                       "\" vs \"" + r.dataset + "\"");
    }
  }

  std::map<std::pair<std::string, std::uint32_t>, std::vector<double>> groups;
  for (const CoverageReport& r : reports) groups[{r.method, r.k}].push_back(r.fraction);

  rows.reserve(groups.size());
  for (const auto& [key, fractions] : groups) {
    ComparisonRow row;
    row.method = key.first;
    row.k = key.second;
    row.runs = static_cast<std::uint32_t>(fractions.size());
    double sum = 0.0;
    row.min_fraction = fractions.front();
    row.max_fraction = fractions.front();
    for (double f : fractions) {
      sum += f;
      row.min_fraction = std::min(row.min_fraction, f);
      row.max_fraction = std::max(row.max_fraction, f);
    }
    row.mean_fraction = sum / static_cast<double>(fractions.size());
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.mean_fraction != b.mean_fraction) return a.mean_fraction > b.mean_fraction;
    if (a.method != b.method) return a.method < b.method;
    return a.k < b.k;
  });
  return rows;
}

}  // namespace zipcal
