#pragma once

#include <cstdint>
#include <string>

#include "zipcal/corpus.hpp"

namespace zipcal {

struct ZipfCorpusParams {
  std::uint32_t samples = 1000;
  std::uint32_t types = 50000;          // vocabulary size of the generator
  std::uint32_t tokens_per_sample = 2048;
  double exponent = 1.1;                // p(rank r) proportional to r^-exponent
  std::uint64_t seed = 0;
  std::string name = "synthetic";
  // Selection and coverage only need per-sample vocab sets; dropping the
  // token streams keeps large benchmark corpora small.
  bool keep_token_streams = true;
};

// Draws tokens iid from a Zipf distribution over types t0..t{types-1} via
// inverse-CDF binary search. Token text for rank r is "t" + r. Deterministic
// for a fixed parameter set.
Dataset generate_zipf_corpus(const ZipfCorpusParams& params, InternTable& intern);

}  // namespace zipcal
