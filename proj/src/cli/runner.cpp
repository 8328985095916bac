#include "cli/runner.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "zipcal/errors.hpp"
#include "zipcal/multi.hpp"
#include "zipcal/synthetic.hpp"

namespace zipcal::cli {
namespace {

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir.string() + ": " + ec.message());
}

double final_fraction(const SelectionResult& result) {
  return result.coverage.empty() ? 0.0 : result.coverage.back();
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.contains(name)) {
    throw DataError(std::string("manifest is missing field \"") + name + "\"");
  }
  return doc.at(name);
}

}  // namespace

Dataset load(const DatasetArg& arg, const Tokenizer& tokenizer, InternTable& intern) {
  const DatasetFormat format = dataset_format_from_string(arg.format);
  return load_dataset(arg.path, format, tokenizer, intern, arg.text_field, arg.name);
}

std::uint64_t full_scan_evaluations(std::uint64_t n, std::uint64_t k) {
  const std::uint64_t p = std::min(n, k);
  return p * n - p * (p - 1) / 2;
}

std::filesystem::path cmd_sample(const SampleConfig& config, std::ostream& out) {
  if (config.method != "zipcal" && config.method != "random") {
    throw UsageError("unknown method: " + config.method + " (expected zipcal or random)");
  }
  ensure_output_dir(config.output_dir);
  const Tokenizer tokenizer(config.tokenizer);
  InternTable intern;
  const Dataset dataset = load(config.dataset, tokenizer, intern);

  SelectionResult result;
  std::string suffix;
  if (config.method == "zipcal") {
    SelectOptions options;
    options.engine = config.engine;
    options.pool_size = config.pool_size;
    options.pool_seed = config.seed;
    result = select_zipcal(dataset, config.k, options);
    if (config.pool_size > 0) {
      suffix = ".pool" + std::to_string(config.pool_size) + ".seed" + std::to_string(config.seed);
    }
  } else {
    result = select_random(dataset, config.k, config.seed);
    suffix = ".seed" + std::to_string(config.seed);
  }

  const Json manifest = selection_manifest(dataset, tokenizer.config(), config.k, result,
                                           config.emit_texts);
  const std::filesystem::path path =
      config.output_dir / (dataset.name + "." + config.method + ".k" + std::to_string(config.k) +
                           suffix + ".manifest.json");
  write_json(path, manifest);

  out << config.method << ": selected " << result.indices.size() << " of " << dataset.size()
      << " samples, coverage " << std::setprecision(6) << final_fraction(result) << " of "
      << dataset.full_vocab.size() << " types, " << result.evaluations << " evaluations, "
      << std::setprecision(3) << result.wall_seconds << "s\n";
  out << "wrote " << path.string() << "\n";
  return path;
}

std::filesystem::path cmd_sample_multi(const MultiConfig& config, std::ostream& out) {
  if (config.datasets.empty()) throw UsageError("sample-multi needs at least one dataset");
  ensure_output_dir(config.output_dir);
  const Tokenizer tokenizer(config.tokenizer);
  InternTable intern;
  std::vector<Dataset> datasets;
  datasets.reserve(config.datasets.size());
  for (const DatasetArg& arg : config.datasets) datasets.push_back(load(arg, tokenizer, intern));

  MultiOptions options;
  options.engine = config.engine;
  options.pool_size = config.pool_size;
  options.embedding_dim = config.embedding_dim;
  options.seed = config.seed;
  const MultiSelectionResult result = select_multidomain(datasets, config.k, intern, options);

  const Json manifest = multi_manifest(datasets, tokenizer.config(), config.k, result,
                                       config.emit_texts);
  const std::filesystem::path path =
      config.output_dir / ("multi." + std::to_string(datasets.size()) + "dom.k" +
                           std::to_string(config.k) + ".seed" + std::to_string(config.seed) +
                           ".manifest.json");
  write_json(path, manifest);

  std::vector<std::size_t> per_domain(datasets.size(), 0);
  for (const PoolEntry& e : result.selected) ++per_domain[e.domain];
  out << "zipcal-multi: selected " << result.selected.size() << " samples from "
      << datasets.size() << " domains (";
  for (std::size_t d = 0; d < per_domain.size(); ++d) {
    out << (d == 0 ? "" : ", ") << result.domain_names[d] << ": " << per_domain[d];
  }
  out << "), stage-1 evaluations " << result.stage1_evaluations << ", stage-2 distance"
      << " evaluations " << result.stage2_evaluations << ", " << std::setprecision(3)
      << result.wall_seconds << "s\n";
  out << "wrote " << path.string() << "\n";
  return path;
}

SelectionResult selection_from_manifest(const Json& manifest) {
  SelectionResult result;
  try {
    result.method = field(manifest, "method").get<std::string>();
    result.indices = field(manifest, "indices").get<std::vector<std::uint32_t>>();
    result.gains = field(manifest, "gains").get<std::vector<std::uint32_t>>();
    result.coverage = field(manifest, "coverage").get<std::vector<double>>();
    result.evaluations = field(manifest, "evaluations").get<std::uint64_t>();
    result.wall_seconds = field(manifest, "wall_seconds").get<double>();
    const Json& seed = field(manifest, "seed");
    if (!seed.is_null()) result.seed = seed.get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed selection manifest: ") + e.what());
  }
  if (result.gains.size() != result.indices.size() ||
      result.coverage.size() != result.indices.size()) {
    throw DataError("selection manifest traces disagree in length");
  }
  return result;
}

std::filesystem::path cmd_stats(const StatsConfig& config, std::ostream& out) {
  ensure_output_dir(config.output_dir);
  const Tokenizer tokenizer(config.tokenizer);
  const std::string tokenizer_hash = tokenizer.config().hash();
  InternTable intern;
  const Dataset dataset = load(config.dataset, tokenizer, intern);

  std::string method = "full";
  std::uint32_t k = 0;
  FrequencyTable table;
  if (config.manifest.empty()) {
    table = frequency_table(dataset);
  } else {
    const Json manifest = read_json(config.manifest);
    verify_manifest(manifest, tokenizer.config(), "selection");
    const SelectionResult recorded = selection_from_manifest(manifest);
    const CoverageReport report = coverage_report(dataset, recorded);
    method = recorded.method;
    k = static_cast<std::uint32_t>(recorded.indices.size());
    table = frequency_table(dataset, recorded.indices);
    const std::filesystem::path coverage_path =
        config.output_dir /
        (dataset.name + "." + method + ".k" + std::to_string(k) + ".coverage.tsv");
    write_coverage_export(coverage_path, report, tokenizer_hash);
    out << "coverage: " << report.covered_types << " of " << report.total_types << " types ("
        << std::setprecision(6) << report.fraction << ")\n";
    out << "wrote " << coverage_path.string() << "\n";
  }

  const std::filesystem::path rank_path =
      config.output_dir /
      (dataset.name + "." + method + ".k" + std::to_string(k) + ".rankfreq.tsv");
  write_rankfreq_export(rank_path, table, dataset.name, method, k, tokenizer_hash);
  out << "rank-frequency: " << table.distinct_types() << " types, " << table.total_tokens
      << " tokens\n";
  out << "wrote " << rank_path.string() << "\n";

  const ZipfFit fit = zipf_fit(table, config.rank_cap);
  out << "zipf fit: exponent " << std::setprecision(4) << fit.exponent << ", r^2 "
      << fit.r_squared << ", over " << fit.ranks_used << " ranks\n";
  return rank_path;
}

std::filesystem::path cmd_compare(const CompareConfig& config, std::ostream& out) {
  if (config.manifests.size() < 2) throw UsageError("compare needs at least 2 manifests");
  ensure_output_dir(config.output_dir);
  const Tokenizer tokenizer(config.tokenizer);
  InternTable intern;
  const Dataset dataset = load(config.dataset, tokenizer, intern);

  std::vector<CoverageReport> reports;
  reports.reserve(config.manifests.size());
  for (const std::filesystem::path& path : config.manifests) {
    const Json manifest = read_json(path);
    verify_manifest(manifest, tokenizer.config(), "selection");
    reports.push_back(coverage_report(dataset, selection_from_manifest(manifest)));
  }

  const std::vector<ComparisonRow> rows = compare_methods(reports);
  const std::filesystem::path path = config.output_dir / (dataset.name + ".compare.tsv");
  write_comparison_export(path, rows, dataset.name, tokenizer.config().hash());
  for (const ComparisonRow& row : rows) {
    out << row.method << " k=" << row.k << ": mean " << std::setprecision(6) << row.mean_fraction
        << " min " << row.min_fraction << " max " << row.max_fraction << " over " << row.runs
        << " run(s)\n";
  }
  out << "wrote " << path.string() << "\n";
  return path;
}

std::vector<BenchRecord> cmd_bench(const BenchConfig& config, std::ostream& out) {
  if (config.sizes.empty() || config.budgets.empty()) {
    throw UsageError("bench needs at least one size and one budget");
  }
  ensure_output_dir(config.output_dir);

  std::vector<BenchRecord> records;
  out << "n\tk\tmethod\twall_seconds\tevaluations\tfull_scan_formula\n";
  for (std::uint32_t n : config.sizes) {
    ZipfCorpusParams params;
    params.samples = n;
    params.types = config.types;
    params.tokens_per_sample = config.tokens_per_sample;
    params.exponent = config.exponent;
    params.seed = config.seed;
    params.name = "zipf-n" + std::to_string(n);
    params.keep_token_streams = false;
    InternTable intern;
    const Dataset dataset = generate_zipf_corpus(params, intern);

    for (std::uint32_t k : config.budgets) {
      SelectOptions options;
      options.engine = config.engine;
      options.pool_size = config.pool_size;
      options.pool_seed = config.seed;
      const SelectionResult result = select_zipcal(dataset, k, options);

      BenchRecord record;
      record.n = n;
      record.k = k;
      record.method = config.pool_size > 0 ? "zipcal-pool" + std::to_string(config.pool_size)
                                           : "zipcal";
      record.wall_seconds = result.wall_seconds;
      record.evaluations = result.evaluations;
      record.formula = full_scan_evaluations(n, k);
      records.push_back(record);
      out << record.n << '\t' << record.k << '\t' << record.method << '\t'
          << std::setprecision(4) << record.wall_seconds << '\t' << record.evaluations << '\t'
          << record.formula << '\n';
    }
  }

  const std::filesystem::path path = config.output_dir / "bench.tsv";
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write: " + path.string());
  file << "n\tk\tmethod\twall_seconds\tevaluations\tfull_scan_formula\n";
  for (const BenchRecord& r : records) {
    file << r.n << '\t' << r.k << '\t' << r.method << '\t' << r.wall_seconds << '\t'
         << r.evaluations << '\t' << r.formula << '\n';
  }
  out << "wrote " << path.string() << "\n";
  return records;
}

}  // namespace zipcal::cli
