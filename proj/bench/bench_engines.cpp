// Compares the OpenMP kernels against the serial reference implementations
// on the two hot loops: the greedy vocabulary scan and the k-centers
// farthest-point update. Both engines must produce identical outputs; the
// table reports wall time and speedup for whatever hardware runs this.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "zipcal/corpus.hpp"
#include "zipcal/embedding.hpp"
#include "zipcal/kcenters.hpp"
#include "zipcal/selection.hpp"
#include "zipcal/synthetic.hpp"

using namespace zipcal;

namespace {

double time_once(const Dataset& dataset, std::uint32_t k, Engine engine,
                 SelectionResult& out) {
  SelectOptions options;
  options.engine = engine;
  const auto start = std::chrono::steady_clock::now();
  out = select_zipcal(dataset, k, options);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int bench_selection(std::uint32_t scale) {
  std::printf("greedy selection: serial reference vs parallel kernel (k=128)\n");
  std::printf("%10s %12s %12s %9s %8s\n", "n", "serial_s", "parallel_s", "speedup",
              "match");
  int mismatches = 0;
  for (std::uint32_t n : {2000u * scale, 4000u * scale, 8000u * scale}) {
    ZipfCorpusParams params;
    params.samples = n;
    params.types = 50000;
    params.tokens_per_sample = 2048;
    params.exponent = 1.1;
    params.name = "bench-n" + std::to_string(n);
    params.keep_token_streams = false;
    InternTable intern;
    const Dataset dataset = generate_zipf_corpus(params, intern);

    SelectionResult serial_result;
    SelectionResult parallel_result;
    const double serial_s = time_once(dataset, 128, Engine::Serial, serial_result);
    const double parallel_s = time_once(dataset, 128, Engine::Parallel, parallel_result);
    const bool match = serial_result.indices == parallel_result.indices &&
                       serial_result.gains == parallel_result.gains &&
                       serial_result.coverage == parallel_result.coverage;
    mismatches += match ? 0 : 1;
    std::printf("%10u %12.4f %12.4f %9.2f %8s\n", n, serial_s, parallel_s,
                serial_s / parallel_s, match ? "yes" : "NO");
  }
  return mismatches;
}

int bench_kcenters(std::uint32_t scale) {
  std::printf("\nk-centers: serial reference vs parallel kernel (k=64, dim=256)\n");
  std::printf("%10s %12s %12s %9s %8s\n", "pool", "serial_s", "parallel_s", "speedup",
              "match");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  int mismatches = 0;
  for (std::uint32_t n : {5000u * scale, 10000u * scale, 20000u * scale}) {
    std::vector<EmbeddingVector> pool(n, EmbeddingVector(256));
    for (auto& p : pool) {
      for (double& x : p) x = coord(gen);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const KCentersResult serial = kcenters_select(pool, 64, 0, Engine::Serial);
    const auto t1 = std::chrono::steady_clock::now();
    const KCentersResult parallel = kcenters_select(pool, 64, 0, Engine::Parallel);
    const auto t2 = std::chrono::steady_clock::now();

    const double serial_s = std::chrono::duration<double>(t1 - t0).count();
    const double parallel_s = std::chrono::duration<double>(t2 - t1).count();
    const bool match = serial.indices == parallel.indices && serial.radii == parallel.radii;
    mismatches += match ? 0 : 1;
    std::printf("%10u %12.4f %12.4f %9.2f %8s\n", n, serial_s, parallel_s,
                serial_s / parallel_s, match ? "yes" : "NO");
  }
  return mismatches;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional integer scale factor multiplies every grid size.
  std::uint32_t scale = 1;
  if (argc > 1) {
    const long v = std::strtol(argv[1], nullptr, 10);
    if (v < 1) {
      std::fprintf(stderr, "usage: %s [scale>=1]\n", argv[0]);
      return 1;
    }
    scale = static_cast<std::uint32_t>(v);
  }

  int mismatches = 0;
  mismatches += bench_selection(scale);
  mismatches += bench_kcenters(scale);
  if (mismatches > 0) {
    std::printf("\nengine outputs diverged on %d grid cells\n", mismatches);
    return 1;
  }
  std::printf("\nengine outputs identical on every grid cell\n");
  return 0;
}
