#include "zipcal/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "zipcal/errors.hpp"
#include "zipcal/hash.hpp"

namespace zipcal {
namespace {

using Json = nlohmann::ordered_json;

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

constexpr std::uint32_t kInvalidCp = 0xFFFFFFFFu;

// Decodes one UTF-8 sequence at position i. Invalid bytes decode as
// kInvalidCp with length 1 so the scan always advances.
std::uint32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
  const auto byte = [&](std::size_t j) { return static_cast<unsigned char>(s[j]); };
  const unsigned char b0 = byte(i);
  len = 1;
  if (b0 < 0x80) return b0;
  const auto cont = [&](std::size_t j) {
    return j < s.size() && (byte(j) & 0xC0) == 0x80;
  };
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    if (!cont(i + 1)) return kInvalidCp;
    len = 2;
    return (std::uint32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
  }
  if (b0 >= 0xE0 && b0 <= 0xEF) {
    if (!cont(i + 1) || !cont(i + 2)) return kInvalidCp;
    len = 3;
    return (std::uint32_t(b0 & 0x0F) << 12) | (std::uint32_t(byte(i + 1) & 0x3F) << 6) |
           (byte(i + 2) & 0x3F);
  }
  if (b0 >= 0xF0 && b0 <= 0xF4) {
    if (!cont(i + 1) || !cont(i + 2) || !cont(i + 3)) return kInvalidCp;
    len = 4;
    return (std::uint32_t(b0 & 0x07) << 18) | (std::uint32_t(byte(i + 1) & 0x3F) << 12) |
           (std::uint32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
  }
  return kInvalidCp;
}

// Word characters: ASCII alphanumerics plus '_', and any valid non-ASCII
// codepoint outside the Unicode whitespace and punctuation ranges below.
// Everything else separates tokens.
bool is_word_codepoint(std::uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') ||
           cp == '_';
  }
  if (cp == kInvalidCp) return false;
  struct Range {
    std::uint32_t lo, hi;
  };
  static constexpr Range kSeparators[] = {
      {0x0085, 0x0085},  // next line
      {0x00A0, 0x00BF},  // NBSP + Latin-1 punctuation
      {0x00D7, 0x00D7},  // multiplication sign
      {0x00F7, 0x00F7},  // division sign
      {0x1680, 0x1680},  // ogham space
      {0x2000, 0x206F},  // general punctuation (incl. line/para separators)
      {0x2E00, 0x2E7F},  // supplemental punctuation
      {0x3000, 0x303F},  // CJK symbols and punctuation
      {0xFE50, 0xFE6F},  // small form variants
      {0xFF01, 0xFF0F},  // fullwidth punctuation blocks
      {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65},
  };
  for (const Range& r : kSeparators) {
    if (cp >= r.lo && cp <= r.hi) return false;
  }
  return true;
}

void check_token_set(const std::set<std::string>& values, const char* field) {
  for (const std::string& v : values) {
    if (v.empty()) throw UsageError(std::string(field) + " must not contain the empty string");
  }
}

std::string read_file_bytes(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot read ") + what + ": " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

std::string to_string(TokenizerMode mode) {
  switch (mode) {
    case TokenizerMode::UnicodeWord: return "unicode-word";
    case TokenizerMode::Whitespace: return "whitespace";
    case TokenizerMode::ExternalVocab: return "external-vocab-file";
  }
  throw UsageError("invalid tokenizer mode value");
}

TokenizerMode tokenizer_mode_from_string(std::string_view name) {
  if (name == "unicode-word") return TokenizerMode::UnicodeWord;
  if (name == "whitespace") return TokenizerMode::Whitespace;
  if (name == "external-vocab-file") return TokenizerMode::ExternalVocab;
  throw UsageError("unknown tokenizer mode: " + std::string(name) +
                   " (expected unicode-word, whitespace, or external-vocab-file)");
}

void TokenizerConfig::validate() const {
  if (context_window < 1) throw UsageError("context_window must be at least 1");
  check_token_set(special_tokens, "special_tokens");
  check_token_set(subword_markers, "subword_markers");
  if (mode == TokenizerMode::ExternalVocab && vocab_file.empty()) {
    throw UsageError("external-vocab-file mode requires vocab_file");
  }
}

TokenizerConfig TokenizerConfig::load(const std::filesystem::path& path) {
  return load_over(path, TokenizerConfig{});
}

TokenizerConfig TokenizerConfig::load_over(const std::filesystem::path& path,
                                           TokenizerConfig base) {
  const std::string bytes = read_file_bytes(path, "tokenizer config");
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw DataError("invalid tokenizer config " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw DataError("tokenizer config must be a JSON object: " + path.string());

  TokenizerConfig config = std::move(base);
  const auto as_string_set = [](const Json& value, const char* field) {
    if (!value.is_array()) throw UsageError(std::string(field) + " must be an array of strings");
    std::set<std::string> out;
    for (const Json& item : value) {
      if (!item.is_string()) throw UsageError(std::string(field) + " must be an array of strings");
      out.insert(item.get<std::string>());
    }
    return out;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "mode") {
      if (!value.is_string()) throw UsageError("mode must be a string");
      config.mode = tokenizer_mode_from_string(value.get<std::string>());
    } else if (key == "lowercase") {
      if (!value.is_boolean()) throw UsageError("lowercase must be a boolean");
      config.lowercase = value.get<bool>();
    } else if (key == "special_tokens") {
      config.special_tokens = as_string_set(value, "special_tokens");
    } else if (key == "subword_markers") {
      config.subword_markers = as_string_set(value, "subword_markers");
    } else if (key == "context_window") {
      if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0 ||
          value.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
        throw UsageError("context_window must be a positive integer");
      }
      config.context_window = value.get<std::uint32_t>();
    } else if (key == "vocab_file") {
      if (!value.is_string()) throw UsageError("vocab_file must be a string");
      config.vocab_file = value.get<std::string>();
    } else {
      throw UsageError("unknown tokenizer config field: " + key);
    }
  }
  config.validate();
  return config;
}

void TokenizerConfig::save(const std::filesystem::path& path) const {
  Json doc;
  doc["mode"] = to_string(mode);
  doc["lowercase"] = lowercase;
  doc["special_tokens"] = special_tokens;
  doc["subword_markers"] = subword_markers;
  doc["context_window"] = context_window;
  doc["vocab_file"] = vocab_file;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write tokenizer config: " + path.string());
  out << doc.dump(2) << '\n';
}

std::string TokenizerConfig::canonical_json() const {
  Json doc;
  doc["mode"] = to_string(mode);
  doc["lowercase"] = lowercase;
  doc["special_tokens"] = special_tokens;    // std::set keeps them sorted
  doc["subword_markers"] = subword_markers;
  doc["context_window"] = context_window;
  if (mode == TokenizerMode::ExternalVocab) {
    // Content hash, not path: moving the file must not change the fingerprint,
    // editing it must.
    doc["vocab_content"] = to_hex64(fnv1a64(read_file_bytes(vocab_file, "vocab file")));
  }
  return doc.dump();
}

std::string TokenizerConfig::hash() const { return to_hex64(fnv1a64(canonical_json())); }

Tokenizer::Tokenizer(TokenizerConfig config) : config_(std::move(config)) {
  config_.validate();
  if (config_.mode == TokenizerMode::ExternalVocab) {
    const std::string bytes = read_file_bytes(config_.vocab_file, "vocab file");
    std::size_t start = 0;
    while (start <= bytes.size()) {
      std::size_t end = bytes.find('\n', start);
      if (end == std::string::npos) end = bytes.size();
      std::string_view line(bytes.data() + start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) {
        external_max_bytes_ = std::max(external_max_bytes_, line.size());
        external_vocab_.emplace(line);
      }
      if (end == bytes.size()) break;
      start = end + 1;
    }
    if (external_vocab_.empty()) {
      throw DataError("vocab file has no entries: " + config_.vocab_file);
    }
  }
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  switch (config_.mode) {
    case TokenizerMode::UnicodeWord: tokens = tokenize_unicode_word(text); break;
    case TokenizerMode::Whitespace: tokens = tokenize_whitespace(text); break;
    case TokenizerMode::ExternalVocab: tokens = tokenize_external(text); break;
  }
  return tokens;
}

std::vector<std::string> Tokenizer::tokenize_unicode_word(std::string_view text) const {
  std::vector<std::string> tokens;
  const std::uint32_t w = config_.context_window;
  std::size_t i = 0;
  std::size_t word_start = std::string_view::npos;
  while (i < text.size() && tokens.size() < w) {
    std::size_t len = 0;
    const std::uint32_t cp = decode_utf8(text, i, len);
    if (is_word_codepoint(cp)) {
      if (word_start == std::string_view::npos) word_start = i;
    } else if (word_start != std::string_view::npos) {
      tokens.emplace_back(text.substr(word_start, i - word_start));
      word_start = std::string_view::npos;
    }
    i += len;
  }
  if (word_start != std::string_view::npos && tokens.size() < w) {
    tokens.emplace_back(text.substr(word_start, i - word_start));
  }
  return tokens;
}

std::vector<std::string> Tokenizer::tokenize_whitespace(std::string_view text) const {
  std::vector<std::string> tokens;
  const std::uint32_t w = config_.context_window;
  std::size_t i = 0;
  while (i < text.size() && tokens.size() < w) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> Tokenizer::tokenize_external(std::string_view text) const {
  std::vector<std::string> tokens;
  const std::uint32_t w = config_.context_window;
  std::size_t i = 0;
  while (i < text.size() && tokens.size() < w) {
    if (is_ascii_space(text[i])) {
      ++i;
      continue;
    }
    // Greedy longest match against the vocabulary; an unmatched position
    // falls back to its single codepoint so no input byte can stall the scan.
    const std::size_t max_len = std::min(external_max_bytes_, text.size() - i);
    std::size_t matched = 0;
    for (std::size_t len = max_len; len >= 1; --len) {
      if (external_vocab_.count(std::string(text.substr(i, len))) != 0) {
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      std::size_t cp_len = 0;
      decode_utf8(text, i, cp_len);
      matched = cp_len;
    }
    tokens.emplace_back(text.substr(i, matched));
    i += matched;
  }
  return tokens;
}

std::optional<std::string> Tokenizer::sanitize(std::string_view token) const {
  const auto is_special = [&](const std::string& t) {
    return config_.special_tokens.count(t) != 0;
  };
  std::string raw(token);
  if (is_special(raw)) return std::nullopt;

  std::string out = std::move(raw);
  if (config_.lowercase) {
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  }
  // Strip marker prefixes until none is left, longest first per round, so the
  // surviving form sanitizes to itself.
  for (;;) {
    std::size_t best = 0;
    for (const std::string& marker : config_.subword_markers) {
      if (marker.size() > best && out.size() >= marker.size() &&
          out.compare(0, marker.size(), marker) == 0) {
        best = marker.size();
      }
    }
    if (best == 0) break;
    out.erase(0, best);
  }
  if (out.empty() || is_special(out)) return std::nullopt;
  return out;
}

}  // namespace zipcal
