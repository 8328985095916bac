#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace zipcal {

enum class TokenizerMode { UnicodeWord, Whitespace, ExternalVocab };

std::string to_string(TokenizerMode mode);
TokenizerMode tokenizer_mode_from_string(std::string_view name);

// Segmentation and sanitization settings. Serialized to/from a JSON config
// file; the canonical serialization is fingerprinted into every manifest so
// consumers can detect mismatched tokenization.
struct TokenizerConfig {
  TokenizerMode mode = TokenizerMode::UnicodeWord;
  bool lowercase = true;
  std::set<std::string> special_tokens = {"<bos>", "<eos>", "<pad>", "<unk>"};
  std::set<std::string> subword_markers = {"##", "\xE2\x96\x81"};  // "##", "▁"
  std::uint32_t context_window = 2048;
  std::string vocab_file;  // ExternalVocab mode only

  // Throws UsageError on an invalid combination.
  void validate() const;

  static TokenizerConfig load(const std::filesystem::path& path);
  // Fields present in the file overwrite `base`; absent fields keep it.
  // Config-file-over-flags precedence is built from this.
  static TokenizerConfig load_over(const std::filesystem::path& path, TokenizerConfig base);
  void save(const std::filesystem::path& path) const;

  // Canonical JSON (fixed key order, sorted sets). In ExternalVocab mode the
  // vocab file's content hash is embedded instead of its path, so the
  // fingerprint changes when the vocabulary itself changes.
  std::string canonical_json() const;
  std::string hash() const;  // 16 hex chars over canonical_json()
};

class Tokenizer {
 public:
  explicit Tokenizer(TokenizerConfig config);

  const TokenizerConfig& config() const { return config_; }

  // Deterministic segmentation, truncated to the first context_window tokens.
  // No lowercasing or filtering happens here.
  std::vector<std::string> tokenize(std::string_view text) const;

  // Drops special tokens, strips subword-marker prefixes, lowercases (ASCII)
  // when configured. Returns nullopt for dropped tokens and for tokens that
  // end up empty. Idempotent on every surviving output: the special-token
  // check is applied both to the raw token and to the sanitized form.
  std::optional<std::string> sanitize(std::string_view token) const;

 private:
  std::vector<std::string> tokenize_unicode_word(std::string_view text) const;
  std::vector<std::string> tokenize_whitespace(std::string_view text) const;
  std::vector<std::string> tokenize_external(std::string_view text) const;

  TokenizerConfig config_;
  std::unordered_set<std::string> external_vocab_;
  std::size_t external_max_bytes_ = 0;
};

}  // namespace zipcal
