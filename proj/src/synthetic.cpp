#include "zipcal/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "zipcal/errors.hpp"
#include "zipcal/rng.hpp"

namespace zipcal {

Dataset generate_zipf_corpus(const ZipfCorpusParams& params, InternTable& intern) {
  if (params.types < 1) throw UsageError("synthetic corpus needs at least 1 type");

  // Rank r (0-based) gets weight (r+1)^-exponent; draws invert the cumulative
  // table by binary search.
  std::vector<double> cumulative(params.types);
  double acc = 0.0;
  for (std::uint32_t r = 0; r < params.types; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -params.exponent);
    cumulative[r] = acc;
  }
  const double total_weight = cumulative.back();

  std::vector<TokenId> rank_ids(params.types);
  for (std::uint32_t r = 0; r < params.types; ++r) {
    rank_ids[r] = intern.intern("t" + std::to_string(r));
  }

  Dataset dataset;
  dataset.name = params.name;
  dataset.samples.resize(params.samples);
  std::vector<char> seen(params.types, 0);

  Rng rng(params.seed);
  std::vector<TokenId> draw;
  for (std::uint32_t i = 0; i < params.samples; ++i) {
    draw.clear();
    draw.reserve(params.tokens_per_sample);
    for (std::uint32_t t = 0; t < params.tokens_per_sample; ++t) {
      const double u = rng.unit_double() * total_weight;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::uint32_t rank = static_cast<std::uint32_t>(
          std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                   static_cast<std::ptrdiff_t>(params.types) - 1));
      seen[rank] = 1;
      draw.push_back(rank_ids[rank]);
    }
    Sample& sample = dataset.samples[i];
    sample.id = i;
    sample.vocab = draw;
    std::sort(sample.vocab.begin(), sample.vocab.end());
    sample.vocab.erase(std::unique(sample.vocab.begin(), sample.vocab.end()),
                       sample.vocab.end());
    if (params.keep_token_streams) sample.tokens = draw;
  }

  for (std::uint32_t r = 0; r < params.types; ++r) {
    if (seen[r]) dataset.full_vocab.push_back(rank_ids[r]);
  }
  std::sort(dataset.full_vocab.begin(), dataset.full_vocab.end());
  return dataset;
}

}  // namespace zipcal
