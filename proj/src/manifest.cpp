#include "zipcal/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zipcal/errors.hpp"

namespace zipcal {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DataError(msg);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write: " + path.string());
  return out;
}

void export_header(std::ofstream& out, std::string_view kind, std::string_view dataset,
                   std::string_view method, std::uint32_t k, std::string_view tokenizer_hash) {
  out << "# kind=" << kind << " dataset=" << dataset << " method=" << method << " k=" << k
      << " tokenizer=" << tokenizer_hash << '\n';
}

}  // namespace

Json selection_manifest(const Dataset& dataset, const TokenizerConfig& tokenizer_config,
                        std::uint32_t requested_k, const SelectionResult& result,
                        bool emit_texts) {
  Json doc;
  doc["format_version"] = kManifestFormatVersion;
  doc["kind"] = "selection";
  doc["dataset"] = dataset.name;
  doc["dataset_samples"] = dataset.size();
  doc["vocab_types"] = dataset.full_vocab.size();
  doc["tokenizer_hash"] = tokenizer_config.hash();
  doc["method"] = result.method;
  doc["k_requested"] = requested_k;
  doc["k_selected"] = result.indices.size();
  if (result.seed.has_value()) {
    doc["seed"] = *result.seed;
  } else {
    doc["seed"] = nullptr;
  }
  doc["evaluations"] = result.evaluations;
  doc["indices"] = result.indices;
  doc["gains"] = result.gains;
  doc["coverage"] = result.coverage;
  doc["covered_types"] = result.covered_final.size();
  doc["wall_seconds"] = result.wall_seconds;
  if (emit_texts) {
    Json texts = Json::array();
    for (std::uint32_t id : result.indices) texts.push_back(dataset.samples[id].text);
    doc["texts"] = std::move(texts);
  }
  return doc;
}

Json multi_manifest(std::span<const Dataset> datasets, const TokenizerConfig& tokenizer_config,
                    std::uint32_t requested_k, const MultiSelectionResult& result,
                    bool emit_texts) {
  Json doc;
  doc["format_version"] = kManifestFormatVersion;
  doc["kind"] = "multi-selection";
  Json domains = Json::array();
  for (const Dataset& d : datasets) {
    Json entry;
    entry["name"] = d.name;
    entry["samples"] = d.size();
    entry["vocab_types"] = d.full_vocab.size();
    domains.push_back(std::move(entry));
  }
  doc["domains"] = std::move(domains);
  doc["tokenizer_hash"] = tokenizer_config.hash();
  doc["method"] = "zipcal-multi";
  doc["k_requested"] = requested_k;
  doc["k_selected"] = result.selected.size();
  doc["seed"] = result.seed;
  doc["embedding_dim"] = result.embedding_dim;

  Json stage1 = Json::array();
  for (std::size_t d = 0; d < result.pool_results.size(); ++d) {
    const SelectionResult& r = result.pool_results[d];
    Json entry;
    entry["domain"] = result.domain_names[d];
    entry["indices"] = r.indices;
    entry["gains"] = r.gains;
    entry["coverage"] = r.coverage;
    entry["evaluations"] = r.evaluations;
    entry["wall_seconds"] = r.wall_seconds;
    stage1.push_back(std::move(entry));
  }
  doc["stage1"] = std::move(stage1);

  const auto entry_pair = [](const PoolEntry& e) {
    return Json::array({e.domain, e.sample});
  };
  Json pool = Json::array();
  for (const PoolEntry& e : result.pool) pool.push_back(entry_pair(e));
  doc["pool"] = std::move(pool);
  doc["center_positions"] = result.center_positions;
  Json selected = Json::array();
  for (const PoolEntry& e : result.selected) selected.push_back(entry_pair(e));
  doc["selected"] = std::move(selected);
  doc["radii"] = result.radii;
  doc["stage1_evaluations"] = result.stage1_evaluations;
  doc["stage2_evaluations"] = result.stage2_evaluations;
  doc["wall_seconds"] = result.wall_seconds;
  if (emit_texts) {
    Json texts = Json::array();
    for (const PoolEntry& e : result.selected) {
      texts.push_back(datasets[e.domain].samples[e.sample].text);
    }
    doc["texts"] = std::move(texts);
  }
  return doc;
}

void write_json(const std::filesystem::path& path, const Json& value) {
  std::ofstream out = open_out(path);
  out << value.dump(2) << '\n';
  if (!out) throw DataError("failed writing: " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void verify_manifest(const Json& manifest, const TokenizerConfig& tokenizer_config,
                     std::string_view expected_kind) {
  require(manifest.is_object(), "manifest is not an object");
  require(manifest.contains("format_version") && manifest["format_version"].is_number_integer(),
          "manifest has no format_version");
  require(manifest["format_version"].get<int>() == kManifestFormatVersion,
          "unsupported manifest format_version");
  require(manifest.contains("kind") && manifest["kind"].is_string(), "manifest has no kind");
  require(manifest["kind"].get<std::string>() == expected_kind,
          "manifest kind \"" + manifest["kind"].get<std::string>() + "\" where \"" +
              std::string(expected_kind) + "\" was expected");
  require(manifest.contains("tokenizer_hash") && manifest["tokenizer_hash"].is_string(),
          "manifest has no tokenizer_hash");
  const std::string expected = tokenizer_config.hash();
  const std::string found = manifest["tokenizer_hash"].get<std::string>();
  require(found == expected, "tokenizer mismatch: manifest was produced with config " + found +
                                 " but the current config hashes to " + expected);
}

Json without_timing(Json manifest) {
  if (manifest.is_object()) {
    manifest.erase("wall_seconds");
    for (auto& [key, value] : manifest.items()) value = without_timing(std::move(value));
  } else if (manifest.is_array()) {
    for (auto& value : manifest) value = without_timing(std::move(value));
  }
  return manifest;
}

void write_rankfreq_export(const std::filesystem::path& path, const FrequencyTable& table,
                           std::string_view dataset, std::string_view method, std::uint32_t k,
                           std::string_view tokenizer_hash) {
  std::ofstream out = open_out(path);
  export_header(out, "rank-frequency", dataset, method, k, tokenizer_hash);
  for (const RankEntry& entry : table.ranks) {
    out << entry.rank << '\t' << entry.count << '\n';
  }
  if (!out) throw DataError("failed writing: " + path.string());
}

void write_coverage_export(const std::filesystem::path& path, const CoverageReport& report,
                           std::string_view tokenizer_hash) {
  std::ofstream out = open_out(path);
  export_header(out, "coverage", report.dataset, report.method, report.k, tokenizer_hash);
  for (std::size_t i = 0; i < report.curve.size(); ++i) {
    out << (i + 1) << '\t' << format_double(report.curve[i]) << '\n';
  }
  if (!out) throw DataError("failed writing: " + path.string());
}

void write_comparison_export(const std::filesystem::path& path,
                             std::span<const ComparisonRow> rows, std::string_view dataset,
                             std::string_view tokenizer_hash) {
  std::ofstream out = open_out(path);
  out << "# kind=comparison dataset=" << dataset << " tokenizer=" << tokenizer_hash << '\n';
  out << "method\tk\truns\tmean\tmin\tmax\n";
  for (const ComparisonRow& row : rows) {
    out << row.method << '\t' << row.k << '\t' << row.runs << '\t'
        << format_double(row.mean_fraction) << '\t' << format_double(row.min_fraction) << '\t'
        << format_double(row.max_fraction) << '\n';
  }
  if (!out) throw DataError("failed writing: " + path.string());
}

}  // namespace zipcal
