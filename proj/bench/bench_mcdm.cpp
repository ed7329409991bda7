// Timing comparison of the serial reference paths against the production
// kernels: step-by-step coder vs incremental coder, and single-thread vs
// OpenMP enumeration / Monte-Carlo sampling.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcdm/analysis.hpp"
#include "mcdm/coder.hpp"

using mcdm::BitVector;
using mcdm::CodebookSpec;
using mcdm::TargetDistribution;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void bench_coder(const CodebookSpec& spec, int reference_trials, int fast_trials) {
  std::mt19937_64 rng(99);
  const std::size_t k = static_cast<std::size_t>(spec.input_length());
  BitVector data(k), codeword;

  auto t0 = Clock::now();
  for (int i = 0; i < reference_trials; ++i) {
    for (std::size_t j = 0; j < k; ++j) data.set(j, rng() & 1);
    mcdm::reference_encode(spec, data);
  }
  const double ref = seconds(t0) / reference_trials;

  mcdm::Encoder enc(spec);
  t0 = Clock::now();
  for (int i = 0; i < fast_trials; ++i) {
    for (std::size_t j = 0; j < k; ++j) data.set(j, rng() & 1);
    enc.encode_into(data, codeword);
  }
  const double fast = seconds(t0) / fast_trials;

  std::printf("encode %-28s reference %10.1f us   incremental %10.1f us   x%.1f\n",
              spec.describe().c_str(), ref * 1e6, fast * 1e6, ref / fast);
}

void bench_exact(const CodebookSpec& spec, const TargetDistribution& t) {
  auto t0 = Clock::now();
  const auto serial = mcdm::divergence_actual_exact_serial(spec, t);
  const double s_ref = seconds(t0);

  t0 = Clock::now();
  const auto parallel = mcdm::divergence_actual_exact(spec, t);
  const double s_par = seconds(t0);

  std::printf("enumerate %-25s serial ref %8.3f s      parallel %10.3f s   x%.1f%s\n",
              spec.describe().c_str(), s_ref, s_par, s_ref / s_par,
              serial.weight_sum == parallel.weight_sum ? "" : "   RESULTS DIFFER");
}

void bench_mc(const CodebookSpec& spec, const TargetDistribution& t, std::uint64_t samples) {
  const int workers =
#ifdef _OPENMP
      omp_get_max_threads();
#else
      1;
#endif
  auto t0 = Clock::now();
  const auto serial = mcdm::divergence_actual_mc_serial(spec, t, samples, 7, workers);
  const double s_ref = seconds(t0);

  t0 = Clock::now();
  const auto parallel = mcdm::divergence_actual_mc(spec, t, samples, 7, workers);
  const double s_par = seconds(t0);

  std::printf("sample %-28s serial     %8.3f s      parallel %10.3f s   x%.1f%s\n",
              spec.describe().c_str(), s_ref, s_par, s_ref / s_par,
              serial.div == parallel.div ? "" : "   RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n\n");
#endif

  const TargetDistribution t(0.422);

  bench_coder(mcdm::make_cc(100, 42), 200, 5000);
  bench_coder(mcdm::make_cc(1000, 420), 20, 500);
  bench_coder(mcdm::optimize_m(mcdm::DmFamily::Opt, 1000, t).spec, 5, 100);
  std::printf("\n");

  bench_exact(mcdm::make_2c(16, 7), t);
  bench_exact(mcdm::make_range(18, 0, 10), t);
  std::printf("\n");

  bench_mc(mcdm::make_cc(110, 46), t, 20000);
  bench_mc(mcdm::optimize_m(mcdm::DmFamily::Opt, 110, t).spec, t, 20000);
  return 0;
}
