#pragma once

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "zipcal/corpus.hpp"
#include "zipcal/rng.hpp"
#include "zipcal/tokenizer.hpp"

namespace zipcal::test {

// Dataset stub for selection tests: only ids and vocab sets matter there.
// Vocab entries are taken as raw token ids.
inline Dataset dataset_from_vocabs(const std::vector<std::vector<TokenId>>& vocabs,
                                   const std::string& name = "stub") {
  Dataset dataset;
  dataset.name = name;
  std::set<TokenId> all;
  for (std::size_t i = 0; i < vocabs.size(); ++i) {
    Sample sample;
    sample.id = static_cast<std::uint32_t>(i);
    sample.tokens = vocabs[i];
    sample.vocab = vocabs[i];
    std::sort(sample.vocab.begin(), sample.vocab.end());
    sample.vocab.erase(std::unique(sample.vocab.begin(), sample.vocab.end()),
                       sample.vocab.end());
    all.insert(sample.vocab.begin(), sample.vocab.end());
    dataset.samples.push_back(std::move(sample));
  }
  dataset.full_vocab.assign(all.begin(), all.end());
  return dataset;
}

// Random instance generator shared by the oracle suites: n samples over a
// universe of `types` ids, each sample holding a random subset.
inline std::vector<std::vector<TokenId>> random_vocabs(std::mt19937_64& gen, std::size_t n,
                                                       std::uint32_t types,
                                                       double keep_probability) {
  std::vector<std::vector<TokenId>> vocabs(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (TokenId t = 0; t < types; ++t) {
      if (unit(gen) < keep_probability) vocabs[i].push_back(t);
    }
  }
  return vocabs;
}

inline TokenizerConfig whitespace_config(std::uint32_t context_window = 2048) {
  TokenizerConfig config;
  config.mode = TokenizerMode::Whitespace;
  config.context_window = context_window;
  return config;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("zipcal-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path file(const std::string& name) const { return dir_ / name; }

 private:
  std::filesystem::path dir_;
};

inline std::filesystem::path write_file(const std::filesystem::path& path,
                                        const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

}  // namespace zipcal::test
