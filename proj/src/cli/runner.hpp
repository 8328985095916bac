#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zipcal/manifest.hpp"
#include "zipcal/selection.hpp"
#include "zipcal/tokenizer.hpp"
#include "zipcal/zipf.hpp"

// Library-level command implementations, one per CLI subcommand, so the whole
// front end is drivable from tests without spawning processes. Each command
// writes its outputs under `output_dir` using deterministic file names and
// reports progress on `out`.
namespace zipcal::cli {

struct DatasetArg {
  std::filesystem::path path;
  std::string format = "plain-lines";
  std::string text_field = "text";
  std::string name;  // empty: file name
};

Dataset load(const DatasetArg& arg, const Tokenizer& tokenizer, InternTable& intern);

struct SampleConfig {
  DatasetArg dataset;
  std::string method = "zipcal";  // or "random"
  std::uint32_t k = 128;
  std::uint64_t seed = 0;         // random baseline; pool draws in pooled mode
  std::uint32_t pool_size = 0;    // 0: full scan
  bool emit_texts = false;
  Engine engine = Engine::Parallel;
  TokenizerConfig tokenizer;
  std::filesystem::path output_dir = ".";
};

std::filesystem::path cmd_sample(const SampleConfig& config, std::ostream& out);

struct MultiConfig {
  std::vector<DatasetArg> datasets;
  std::uint32_t k = 128;
  std::uint32_t pool_size = 0;  // 0: same as k
  std::size_t embedding_dim = 256;
  std::uint64_t seed = 0;
  bool emit_texts = false;
  Engine engine = Engine::Parallel;
  TokenizerConfig tokenizer;
  std::filesystem::path output_dir = ".";
};

std::filesystem::path cmd_sample_multi(const MultiConfig& config, std::ostream& out);

struct StatsConfig {
  DatasetArg dataset;
  std::filesystem::path manifest;  // optional: restrict stats to a selection
  std::uint32_t rank_cap = kDefaultFitRankCap;
  TokenizerConfig tokenizer;
  std::filesystem::path output_dir = ".";
};

// Writes the rank-frequency export (and, with a manifest, the selection's
// coverage export) and prints the Zipf fit. Returns the rank-frequency path.
std::filesystem::path cmd_stats(const StatsConfig& config, std::ostream& out);

struct CompareConfig {
  DatasetArg dataset;
  std::vector<std::filesystem::path> manifests;  // at least 2
  TokenizerConfig tokenizer;
  std::filesystem::path output_dir = ".";
};

std::filesystem::path cmd_compare(const CompareConfig& config, std::ostream& out);

struct BenchRecord {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::string method;
  double wall_seconds = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t formula = 0;  // kn - k(k+1)/2 + k, the full-scan count
};

struct BenchConfig {
  std::vector<std::uint32_t> sizes = {10000, 20000, 40000};
  std::vector<std::uint32_t> budgets = {128};
  std::uint32_t types = 50000;
  std::uint32_t tokens_per_sample = 2048;
  double exponent = 1.1;
  std::uint64_t seed = 0;
  std::uint32_t pool_size = 0;
  Engine engine = Engine::Parallel;
  std::filesystem::path output_dir = ".";
};

std::uint64_t full_scan_evaluations(std::uint64_t n, std::uint64_t k);

std::vector<BenchRecord> cmd_bench(const BenchConfig& config, std::ostream& out);

// Rebuilds the trace a selection manifest recorded, for consumer commands.
SelectionResult selection_from_manifest(const Json& manifest);

}  // namespace zipcal::cli
