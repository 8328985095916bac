#include "zipcal/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "zipcal/errors.hpp"

namespace zipcal {
namespace {

// Documents per tokenization batch. Tokenization parallelizes inside a batch;
// interning then runs serially in document order, so identifiers never depend
// on thread scheduling and transient per-document token buffers stay bounded.
constexpr std::size_t kBatchDocs = 512;

std::vector<std::string> split_lines(const std::string& bytes) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string::npos) end = bytes.size();
    std::size_t len = end - start;
    if (len > 0 && bytes[start + len - 1] == '\r') --len;
    lines.emplace_back(bytes, start, len);
    if (end == bytes.size()) break;
    start = end + 1;
  }
  return lines;
}

// Tokenize + sanitize one document; interning is deferred to the caller.
std::vector<std::string> sanitized_stream(const std::string& text, const Tokenizer& tokenizer) {
  std::vector<std::string> out;
  for (std::string& raw : tokenizer.tokenize(text)) {
    if (auto clean = tokenizer.sanitize(raw)) out.push_back(std::move(*clean));
  }
  return out;
}

}  // namespace

TokenId InternTable::intern(std::string_view token) {
  std::string key(token);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  const TokenId id = static_cast<TokenId>(strings_.size());
  strings_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<TokenId> InternTable::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

DatasetFormat dataset_format_from_string(std::string_view name) {
  if (name == "plain-lines") return DatasetFormat::PlainLines;
  if (name == "json-records") return DatasetFormat::JsonRecords;
  throw UsageError("unknown dataset format: " + std::string(name) +
                   " (expected plain-lines or json-records)");
}

std::vector<TokenId> build_vocab(std::span<const std::string> raw_tokens,
                                 const Tokenizer& tokenizer, InternTable& intern) {
  std::vector<TokenId> ids;
  ids.reserve(raw_tokens.size());
  for (const std::string& raw : raw_tokens) {
    if (auto clean = tokenizer.sanitize(raw)) ids.push_back(intern.intern(*clean));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Dataset build_dataset(std::vector<std::string> documents, const Tokenizer& tokenizer,
                      InternTable& intern, const std::string& name) {
  Dataset dataset;
  dataset.name = name;
  const std::size_t n = documents.size();
  dataset.samples.resize(n);

  std::vector<std::vector<std::string>> streams;
  for (std::size_t base = 0; base < n; base += kBatchDocs) {
    const std::size_t count = std::min(kBatchDocs, n - base);
    streams.assign(count, {});
#ifdef ZIPCAL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long j = 0; j < static_cast<long long>(count); ++j) {
      streams[static_cast<std::size_t>(j)] =
          sanitized_stream(documents[base + static_cast<std::size_t>(j)], tokenizer);
    }
    for (std::size_t j = 0; j < count; ++j) {
      Sample& sample = dataset.samples[base + j];
      sample.id = static_cast<std::uint32_t>(base + j);
      sample.text = std::move(documents[base + j]);
      sample.tokens.reserve(streams[j].size());
      for (const std::string& tok : streams[j]) sample.tokens.push_back(intern.intern(tok));
      sample.vocab = sample.tokens;
      std::sort(sample.vocab.begin(), sample.vocab.end());
      sample.vocab.erase(std::unique(sample.vocab.begin(), sample.vocab.end()),
                         sample.vocab.end());
    }
  }

  std::vector<bool> seen(intern.size(), false);
  for (const Sample& sample : dataset.samples) {
    for (TokenId id : sample.vocab) seen[id] = true;
  }
  for (TokenId id = 0; id < seen.size(); ++id) {
    if (seen[id]) dataset.full_vocab.push_back(id);
  }
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const Tokenizer& tokenizer, InternTable& intern,
                     const std::string& text_field, const std::string& name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read dataset: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<std::string> lines = split_lines(buf.str());

  std::vector<std::string> documents;
  if (format == DatasetFormat::PlainLines) {
    documents = std::move(lines);
  } else {
    documents.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(lines[i]);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + " line " + std::to_string(i + 1) +
                        ": invalid record: " + e.what());
      }
      if (!record.is_object() || !record.contains(text_field) ||
          !record[text_field].is_string()) {
        throw DataError(path.string() + " line " + std::to_string(i + 1) +
                        ": record has no string field \"" + text_field + "\"");
      }
      documents.push_back(record[text_field].get<std::string>());
    }
  }
  const std::string resolved = name.empty() ? path.filename().string() : name;
  return build_dataset(std::move(documents), tokenizer, intern, resolved);
}

}  // namespace zipcal
