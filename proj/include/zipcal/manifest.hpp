#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "zipcal/multi.hpp"
#include "zipcal/selection.hpp"
#include "zipcal/tokenizer.hpp"
#include "zipcal/zipf.hpp"

namespace zipcal {

inline constexpr int kManifestFormatVersion = 1;

// Manifests use ordered_json so field order is fixed and runs with identical
// inputs serialize byte-identically (timing fields aside).
using Json = nlohmann::ordered_json;

Json selection_manifest(const Dataset& dataset, const TokenizerConfig& tokenizer_config,
                        std::uint32_t requested_k, const SelectionResult& result,
                        bool emit_texts = false);

Json multi_manifest(std::span<const Dataset> datasets, const TokenizerConfig& tokenizer_config,
                    std::uint32_t requested_k, const MultiSelectionResult& result,
                    bool emit_texts = false);

void write_json(const std::filesystem::path& path, const Json& value);
Json read_json(const std::filesystem::path& path);  // DataError on unreadable/invalid JSON

// Consumers check a manifest against the tokenizer they are about to use.
// DataError when the embedded hash, kind, or format_version do not match.
void verify_manifest(const Json& manifest, const TokenizerConfig& tokenizer_config,
                     std::string_view expected_kind);

// Copy with every "wall_seconds" field (top level and nested) removed, for
// timing-insensitive equality checks.
Json without_timing(Json manifest);

// Plot-ready delimited exports. Each starts with a one-line '#' header naming
// dataset, method, k, and tokenizer hash, then one record per line.
void write_rankfreq_export(const std::filesystem::path& path, const FrequencyTable& table,
                           std::string_view dataset, std::string_view method, std::uint32_t k,
                           std::string_view tokenizer_hash);
void write_coverage_export(const std::filesystem::path& path, const CoverageReport& report,
                           std::string_view tokenizer_hash);
void write_comparison_export(const std::filesystem::path& path,
                             std::span<const ComparisonRow> rows, std::string_view dataset,
                             std::string_view tokenizer_hash);

}  // namespace zipcal
