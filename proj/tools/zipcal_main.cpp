#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef ZIPCAL_HAVE_OPENMP
#include <omp.h>
#endif

#include "cli/runner.hpp"
#include "zipcal/errors.hpp"

namespace {

using namespace zipcal;
using namespace zipcal::cli;

// Shared per-command state gathered from flags. Tokenizer precedence is:
// defaults, overridden by flags (-w), overridden by --tokenizer-config fields.
struct CommonFlags {
  std::string tokenizer_config;
  std::uint32_t context_window = 2048;
  std::string engine = "parallel";
  std::string output_dir = ".";

  TokenizerConfig resolve_tokenizer() const {
    TokenizerConfig config;
    config.context_window = context_window;
    if (!tokenizer_config.empty()) {
      config = TokenizerConfig::load_over(tokenizer_config, config);
    }
    config.validate();
    return config;
  }
};

void add_common(CLI::App* cmd, CommonFlags& common) {
  cmd->add_option("--tokenizer-config", common.tokenizer_config,
                  "Tokenizer config JSON; its fields override flag values");
  cmd->add_option("-w,--context-window", common.context_window,
                  "Max raw tokens per sample (default 2048)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--engine", common.engine, "Kernel engine: parallel or serial (default parallel)")
      ->check(CLI::IsMember({"parallel", "serial"}));
  cmd->add_option("-o,--output-dir", common.output_dir, "Output directory (default .)");
}

void add_dataset(CLI::App* cmd, DatasetArg& arg, bool required = true) {
  auto* opt = cmd->add_option("dataset", arg.path, "Dataset file");
  if (required) opt->required();
  cmd->add_option("--format", arg.format, "plain-lines or json-records (default plain-lines)")
      ->check(CLI::IsMember({"plain-lines", "json-records"}));
  cmd->add_option("--text-field", arg.text_field,
                  "Text field name for json-records (default text)");
  cmd->add_option("--name", arg.name, "Dataset label (default: file name)");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"zipcal: lexically diverse calibration-set curation"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = library default)");

  // sample
  auto* sample = app.add_subcommand("sample", "Select k samples from one dataset");
  CommonFlags sample_common;
  SampleConfig sample_config;
  add_dataset(sample, sample_config.dataset);
  add_common(sample, sample_common);
  sample->add_option("-k,--samples", sample_config.k, "Selection budget (default 128)")
      ->check(CLI::PositiveNumber);
  sample->add_option("--method", sample_config.method, "zipcal or random (default zipcal)")
      ->check(CLI::IsMember({"zipcal", "random"}));
  sample->add_option("--seed", sample_config.seed,
                     "Seed for the random baseline or pooled scans (default 0)");
  sample->add_option("--pool-size", sample_config.pool_size,
                     "Candidates scanned per step; 0 = all (default 0)");
  sample->add_flag("--emit-texts", sample_config.emit_texts,
                   "Embed selected raw texts in the manifest");

  // sample-multi
  auto* multi = app.add_subcommand("sample-multi", "Hierarchical selection across domains");
  CommonFlags multi_common;
  MultiConfig multi_config;
  std::vector<std::string> multi_paths;
  std::string multi_format = "plain-lines";
  std::string multi_text_field = "text";
  multi->add_option("datasets", multi_paths, "Dataset files, one per domain")->required();
  multi->add_option("--format", multi_format, "plain-lines or json-records (default plain-lines)")
      ->check(CLI::IsMember({"plain-lines", "json-records"}));
  multi->add_option("--text-field", multi_text_field,
                    "Text field name for json-records (default text)");
  add_common(multi, multi_common);
  multi->add_option("-k,--samples", multi_config.k, "Final selection budget (default 128)")
      ->check(CLI::PositiveNumber);
  multi->add_option("--pool-size", multi_config.pool_size,
                    "Per-domain pool size; 0 = same as k (default 0)");
  multi->add_option("--dim", multi_config.embedding_dim,
                    "Embedding dimension (default 256)");
  multi->add_option("--seed", multi_config.seed, "Seed for the first k-centers pick (default 0)");
  multi->add_flag("--emit-texts", multi_config.emit_texts,
                  "Embed selected raw texts in the manifest");

  // stats
  auto* stats = app.add_subcommand("stats", "Rank-frequency table and Zipf fit");
  CommonFlags stats_common;
  StatsConfig stats_config;
  std::string stats_manifest;
  add_dataset(stats, stats_config.dataset);
  add_common(stats, stats_common);
  stats->add_option("--manifest", stats_manifest, "Restrict stats to a selection manifest");
  stats->add_option("--rank-cap", stats_config.rank_cap,
                    "Max rank used by the Zipf fit (default 10000)")
      ->check(CLI::PositiveNumber);

  // compare
  auto* compare = app.add_subcommand("compare", "Compare selection manifests by coverage");
  CommonFlags compare_common;
  CompareConfig compare_config;
  std::vector<std::string> compare_manifests;
  add_dataset(compare, compare_config.dataset);
  add_common(compare, compare_common);
  compare->add_option("--manifest", compare_manifests, "Selection manifests (repeatable, >= 2)")
      ->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Selection-loop scaling on synthetic Zipf corpora");
  CommonFlags bench_common;
  BenchConfig bench_config;
  add_common(bench, bench_common);
  bench->add_option("--sizes", bench_config.sizes,
                    "Corpus sizes n (default 10000 20000 40000)");
  bench->add_option("--budgets", bench_config.budgets, "Budgets k (default 128)");
  bench->add_option("--types", bench_config.types, "Generator vocabulary size (default 50000)");
  bench->add_option("--tokens-per-sample", bench_config.tokens_per_sample,
                    "Tokens drawn per sample (default 2048)");
  bench->add_option("--exponent", bench_config.exponent, "Zipf exponent (default 1.1)");
  bench->add_option("--seed", bench_config.seed, "Generator seed (default 0)");
  bench->add_option("--pool-size", bench_config.pool_size,
                    "Candidates scanned per step; 0 = all (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (threads > 0) {
#ifdef ZIPCAL_HAVE_OPENMP
    omp_set_num_threads(threads);
#endif
  }

  if (sample->parsed()) {
    sample_config.tokenizer = sample_common.resolve_tokenizer();
    sample_config.engine = engine_from_string(sample_common.engine);
    sample_config.output_dir = sample_common.output_dir;
    cmd_sample(sample_config, std::cout);
  } else if (multi->parsed()) {
    multi_config.tokenizer = multi_common.resolve_tokenizer();
    multi_config.engine = engine_from_string(multi_common.engine);
    multi_config.output_dir = multi_common.output_dir;
    for (const std::string& path : multi_paths) {
      DatasetArg arg;
      arg.path = path;
      arg.format = multi_format;
      arg.text_field = multi_text_field;
      multi_config.datasets.push_back(std::move(arg));
    }
    cmd_sample_multi(multi_config, std::cout);
  } else if (stats->parsed()) {
    stats_config.tokenizer = stats_common.resolve_tokenizer();
    stats_config.output_dir = stats_common.output_dir;
    stats_config.manifest = stats_manifest;
    cmd_stats(stats_config, std::cout);
  } else if (compare->parsed()) {
    compare_config.tokenizer = compare_common.resolve_tokenizer();
    compare_config.output_dir = compare_common.output_dir;
    for (const std::string& path : compare_manifests) compare_config.manifests.push_back(path);
    cmd_compare(compare_config, std::cout);
  } else if (bench->parsed()) {
    bench_config.engine = engine_from_string(bench_common.engine);
    bench_config.output_dir = bench_common.output_dir;
    cmd_bench(bench_config, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
