#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zipcal/tokenizer.hpp"

namespace zipcal {

using TokenId = std::uint32_t;

// Run-global bijection between sanitized token strings and dense ids.
// Ids are assigned in first-occurrence order of a serial interning pass, so
// a given input always produces the same table regardless of how many
// threads tokenized the documents.
class InternTable {
 public:
  TokenId intern(std::string_view token);
  std::optional<TokenId> find(std::string_view token) const;
  std::string_view text(TokenId id) const { return strings_[id]; }
  std::size_t size() const { return strings_.size(); }

 private:
  std::unordered_map<std::string, TokenId> ids_;
  std::vector<std::string> strings_;
};

struct Sample {
  std::uint32_t id = 0;           // zero-based index within its dataset
  std::string text;               // raw document
  std::vector<TokenId> tokens;    // sanitized stream, in order, from the first
                                  // context_window raw tokens
  std::vector<TokenId> vocab;     // sorted distinct ids of `tokens`
};

struct Dataset {
  std::string name;
  std::vector<Sample> samples;
  std::vector<TokenId> full_vocab;  // sorted union of all sample vocabularies

  std::size_t size() const { return samples.size(); }
};

enum class DatasetFormat { PlainLines, JsonRecords };

DatasetFormat dataset_format_from_string(std::string_view name);

// Set of interned ids of sanitize-surviving tokens, sorted and deduplicated.
std::vector<TokenId> build_vocab(std::span<const std::string> raw_tokens,
                                 const Tokenizer& tokenizer, InternTable& intern);

// Materializes one Sample per line/record, in file order. Empty documents are
// kept (with empty vocab) so sample ids line up with the source file.
// Tokenization runs in parallel; interning is a serial post-pass.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const Tokenizer& tokenizer, InternTable& intern,
                     const std::string& text_field = "text",
                     const std::string& name = "");

// Same pipeline for documents already in memory (used by tests and the
// synthetic generator's text path).
Dataset build_dataset(std::vector<std::string> documents, const Tokenizer& tokenizer,
                      InternTable& intern, const std::string& name);

}  // namespace zipcal
