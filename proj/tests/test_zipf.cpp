#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "zipcal/errors.hpp"
#include "zipcal/selection.hpp"
#include "zipcal/synthetic.hpp"
#include "zipcal/zipf.hpp"

using namespace zipcal;
using zipcal::test::dataset_from_vocabs;

namespace {

std::map<TokenId, std::uint64_t> count_oracle(const Dataset& dataset,
                                              const std::vector<std::uint32_t>& ids) {
  std::map<TokenId, std::uint64_t> counts;
  for (std::uint32_t id : ids) {
    for (TokenId t : dataset.samples[id].tokens) ++counts[t];
  }
  return counts;
}

void check_against_oracle(const FrequencyTable& table,
                          const std::map<TokenId, std::uint64_t>& oracle) {
  REQUIRE(table.ranks.size() == oracle.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < table.ranks.size(); ++i) {
    const RankEntry& e = table.ranks[i];
    CHECK(e.rank == i + 1);
    REQUIRE(oracle.count(e.token) == 1);
    CHECK(e.count == oracle.at(e.token));
    total += e.count;
    if (i > 0) {
      const RankEntry& prev = table.ranks[i - 1];
      // Count descending, ties by token id ascending.
      CHECK((prev.count > e.count || (prev.count == e.count && prev.token < e.token)));
    }
  }
  CHECK(table.total_tokens == total);
}

}  // namespace

TEST_CASE("frequency_table on a tiny stream") {
  const Dataset dataset = dataset_from_vocabs({{0, 0, 1}});
  const FrequencyTable table = frequency_table(dataset);
  REQUIRE(table.ranks.size() == 2);
  CHECK(table.total_tokens == 3);
  CHECK(table.ranks[0].rank == 1);
  CHECK(table.ranks[0].token == 0);
  CHECK(table.ranks[0].count == 2);
  CHECK(table.ranks[1].rank == 2);
  CHECK(table.ranks[1].token == 1);
  CHECK(table.ranks[1].count == 1);
  CHECK(table.distinct_types() == 2);
}

TEST_CASE("frequency_table of an empty dataset is empty") {
  const FrequencyTable table = frequency_table(Dataset{});
  CHECK(table.ranks.empty());
  CHECK(table.total_tokens == 0);
}

TEST_CASE("equal counts rank by token id") {
  const Dataset dataset = dataset_from_vocabs({{9, 3, 7, 3, 9, 7}});
  const FrequencyTable table = frequency_table(dataset);
  REQUIRE(table.ranks.size() == 3);
  CHECK(table.ranks[0].token == 3);
  CHECK(table.ranks[1].token == 7);
  CHECK(table.ranks[2].token == 9);
}

TEST_CASE("frequency_table matches a map oracle on random streams") {
  std::mt19937_64 gen(81);
  std::uniform_int_distribution<TokenId> id(0, 200);
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::vector<std::vector<TokenId>> streams(1000);
  for (auto& s : streams) {
    const std::size_t m = len(gen);
    for (std::size_t j = 0; j < m; ++j) s.push_back(id(gen));
  }
  const Dataset dataset = dataset_from_vocabs(streams);

  std::vector<std::uint32_t> all_ids(dataset.size());
  for (std::uint32_t i = 0; i < dataset.size(); ++i) all_ids[i] = i;
  check_against_oracle(frequency_table(dataset), count_oracle(dataset, all_ids));

  SUBCASE("subset overload restricts to the given samples") {
    const std::vector<std::uint32_t> subset{3, 17, 999, 417, 8};
    check_against_oracle(frequency_table(dataset, subset), count_oracle(dataset, subset));
  }
  SUBCASE("out-of-range sample id") {
    const std::vector<std::uint32_t> bad{5, 1000};
    CHECK_THROWS_AS(frequency_table(dataset, bad), DataError);
  }
}

TEST_CASE("table_from_counts omits zero entries") {
  const std::vector<std::uint64_t> counts{0, 5, 0, 5, 1};
  const FrequencyTable table = table_from_counts(counts);
  REQUIRE(table.ranks.size() == 3);
  CHECK(table.total_tokens == 11);
  CHECK(table.ranks[0].token == 1);  // tie with token 3 broken by id
  CHECK(table.ranks[1].token == 3);
  CHECK(table.ranks[2].token == 4);
}

TEST_CASE("zipf_fit recovers an exact power law") {
  std::vector<std::uint64_t> counts;
  const double s = 1.2;
  for (std::uint32_t r = 1; r <= 200; ++r) {
    counts.push_back(static_cast<std::uint64_t>(
        std::llround(1e9 * std::pow(static_cast<double>(r), -s))));
  }
  // counts are already rank-ordered: token id == rank - 1
  const FrequencyTable table = table_from_counts(counts);
  const ZipfFit fit = zipf_fit(table);
  CHECK(fit.exponent == doctest::Approx(s).epsilon(0.005));
  CHECK(fit.r_squared > 0.9999);
  CHECK(fit.ranks_used == 200);
  CHECK(fit.intercept == doctest::Approx(std::log(1e9)).epsilon(0.001));
}

TEST_CASE("zipf_fit on uniform counts is flat") {
  const std::vector<std::uint64_t> counts(50, 7);
  const ZipfFit fit = zipf_fit(table_from_counts(counts));
  CHECK(fit.exponent == doctest::Approx(0.0));
  CHECK(fit.r_squared == 1.0);  // zero-variance response is a perfect flat fit
}

TEST_CASE("zipf_fit argument and data errors") {
  const std::vector<std::uint64_t> nine(9, 3);
  CHECK_THROWS_AS(zipf_fit(table_from_counts(nine)), DataError);
  const std::vector<std::uint64_t> twelve(12, 3);
  CHECK_THROWS_AS(zipf_fit(table_from_counts(twelve), 0), UsageError);
}

TEST_CASE("rank cap limits the ranks entering the fit") {
  std::vector<std::uint64_t> counts;
  for (std::uint32_t r = 1; r <= 100; ++r) {
    counts.push_back(static_cast<std::uint64_t>(
        std::llround(1e8 * std::pow(static_cast<double>(r), -0.8))));
  }
  const FrequencyTable table = table_from_counts(counts);
  const ZipfFit capped = zipf_fit(table, 20);
  CHECK(capped.ranks_used == 20);
  const ZipfFit full = zipf_fit(table, 10000);
  CHECK(full.ranks_used == 100);
  CHECK(capped.exponent == doctest::Approx(0.8).epsilon(0.01));
}

TEST_CASE("zipf_fit on a generated corpus recovers the exponent") {
  InternTable intern;
  ZipfCorpusParams params;
  params.samples = 1000;
  params.types = 5000;
  params.tokens_per_sample = 1000;
  params.exponent = 1.2;
  params.seed = 11;
  params.name = "zipf-unit";
  const Dataset dataset = generate_zipf_corpus(params, intern);
  CHECK(dataset.size() == 1000);

  const FrequencyTable table = frequency_table(dataset);
  CHECK(table.total_tokens == 1000ull * 1000ull);
  const ZipfFit fit = zipf_fit(table);
  // One million iid draws: the empirical tail flattens the estimate a bit,
  // so allow a wider band than the exact-law test.
  CHECK(fit.exponent == doctest::Approx(1.2).epsilon(0.13));
  CHECK(fit.r_squared > 0.9);
}

TEST_CASE("coverage_report agrees with selection output") {
  std::mt19937_64 gen(82);
  const Dataset dataset =
      dataset_from_vocabs(zipcal::test::random_vocabs(gen, 30, 50, 0.15), "cov");
  const SelectionResult result = select_zipcal(dataset, 8);
  const CoverageReport report = coverage_report(dataset, result);
  CHECK(report.dataset == "cov");
  CHECK(report.method == "zipcal");
  CHECK(report.k == 8);
  CHECK(report.covered_types == result.covered_final.size());
  CHECK(report.total_types == dataset.full_vocab.size());
  CHECK(report.curve == result.coverage);  // bitwise: same accumulation path
  CHECK(report.fraction == result.coverage.back());

  SUBCASE("full selection reaches fraction 1") {
    const CoverageReport full = coverage_report(dataset, select_zipcal(dataset, 30));
    CHECK(full.fraction == 1.0);
    CHECK(full.covered_types == full.total_types);
  }
  SUBCASE("empty selection reports fraction 0") {
    SelectionResult empty;
    empty.method = "zipcal";
    const CoverageReport r = coverage_report(dataset, empty);
    CHECK(r.k == 0);
    CHECK(r.fraction == 0.0);
    CHECK(r.curve.empty());
  }
  SUBCASE("tampered coverage trace is rejected") {
    SelectionResult bent = result;
    bent.coverage[3] += 1e-9;
    CHECK_THROWS_AS(coverage_report(dataset, bent), DataError);
  }
  SUBCASE("duplicate index is rejected") {
    SelectionResult bent = result;
    bent.indices[2] = bent.indices[1];
    CHECK_THROWS_AS(coverage_report(dataset, bent), DataError);
  }
  SUBCASE("out-of-range index is rejected") {
    SelectionResult bent = result;
    bent.indices[0] = 30;
    CHECK_THROWS_AS(coverage_report(dataset, bent), DataError);
  }
}

TEST_CASE("greedy beats random baselines on a Zipf corpus") {
  InternTable intern;
  ZipfCorpusParams params;
  params.samples = 400;
  params.types = 2000;
  params.tokens_per_sample = 1024;
  params.exponent = 1.1;
  params.seed = 17;
  params.name = "zipf-margin";
  const Dataset dataset = generate_zipf_corpus(params, intern);

  const SelectionResult greedy = select_zipcal(dataset, 16);
  const CoverageReport greedy_report = coverage_report(dataset, greedy);

  std::vector<CoverageReport> reports{greedy_report};
  double best_random = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CoverageReport r = coverage_report(dataset, select_random(dataset, 16, seed));
    best_random = std::max(best_random, r.fraction);
    reports.push_back(r);
  }
  CHECK(greedy_report.fraction > best_random);
  CHECK(greedy_report.fraction > 0.35);

  const std::vector<ComparisonRow> rows = compare_methods(reports);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].method == "zipcal");  // higher mean sorts first
  CHECK(rows[0].runs == 1);
  CHECK(rows[1].method == "random");
  CHECK(rows[1].runs == 5);
  CHECK(rows[1].max_fraction == best_random);
  CHECK(rows[1].min_fraction <= rows[1].mean_fraction);
  CHECK(rows[1].mean_fraction <= rows[1].max_fraction);
  CHECK(rows[1].mean_fraction < rows[0].mean_fraction);
}

TEST_CASE("compare_methods aggregation oracle") {
  std::mt19937_64 gen(83);
  const Dataset dataset =
      dataset_from_vocabs(zipcal::test::random_vocabs(gen, 25, 40, 0.2), "agg");

  std::vector<CoverageReport> reports;
  double sum = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CoverageReport r = coverage_report(dataset, select_random(dataset, 5, seed));
    sum += r.fraction;
    lo = std::min(lo, r.fraction);
    hi = std::max(hi, r.fraction);
    reports.push_back(std::move(r));
  }
  // A second k for the same method lands in its own row.
  reports.push_back(coverage_report(dataset, select_random(dataset, 10, 0)));

  const std::vector<ComparisonRow> rows = compare_methods(reports);
  REQUIRE(rows.size() == 2);
  const auto& k5 = rows[0].k == 5 ? rows[0] : rows[1];
  const auto& k10 = rows[0].k == 5 ? rows[1] : rows[0];
  CHECK(k5.runs == 20);
  CHECK(k5.mean_fraction == doctest::Approx(sum / 20.0).epsilon(1e-12));
  CHECK(k5.min_fraction == lo);
  CHECK(k5.max_fraction == hi);
  CHECK(k10.runs == 1);
  CHECK(k10.k == 10);

  SUBCASE("empty input yields no rows") {
    CHECK(compare_methods({}).empty());
  }
  SUBCASE("mixed datasets are rejected") {
    CoverageReport other = reports.front();
    other.dataset = "different";
    reports.push_back(other);
    CHECK_THROWS_AS(compare_methods(reports), UsageError);
  }
}
