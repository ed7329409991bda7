#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcdm/codebook.hpp"

namespace mcdm {

// Binary target distribution, given by the probability of symbol 1.
struct TargetDistribution {
  double p1;
  explicit TargetDistribution(double p);
};

// Binary entropy in bits, with 0 log 0 = 0.
double entropy(const TargetDistribution& target);
double entropy(double p1);

enum class DmFamily { CC, TwoC, Opt, Range, WeightSet };

// A codebook family selector: the three optimizable families plus fixed
// range / explicit weight-set codebooks.
struct DmKind {
  DmFamily family = DmFamily::CC;
  int m_low = -1, m_high = -1;  // Range only
  std::vector<int> weights;     // WeightSet only

  static DmKind cc() { return {DmFamily::CC, -1, -1, {}}; }
  static DmKind two_c() { return {DmFamily::TwoC, -1, -1, {}}; }
  static DmKind opt() { return {DmFamily::Opt, -1, -1, {}}; }
  static DmKind range(int lo, int hi) { return {DmFamily::Range, lo, hi, {}}; }
  static DmKind weight_set(std::vector<int> w) {
    return {DmFamily::WeightSet, -1, -1, std::move(w)};
  }

  std::string name() const;  // "cc", "2c", "opt", "range[lo,hi]", "set{..}"
};

// KL divergence rate (bits/symbol) between the uniform distribution on the
// base codebook and n IID target symbols, by the closed form
//
//   (1/n) [ -log2 M - (1/M) sum_m C(n,m) (m log2 p1 + (n-m) log2(1-p1)) ]
//
// No enumeration; returns +infinity when p1 is 0 or 1 and the codebook
// contains an incompatible weight.
double divergence_base(const CodebookSpec& spec, const TargetDistribution& target);

struct ExactDivergence {
  double div;                // bits/symbol, actual codebook vs target
  double pc1;                // empirical per-symbol probability of 1
  std::uint64_t weight_sum;  // sum of codeword weights over all 2^k inputs
};

// Enumerate all 2^k inputs, encode each, and evaluate the divergence of the
// (uniform) actual codebook exactly. Throws when k exceeds budget_k.
// The parallel kernel reduces an integer weight sum, so its result is
// bit-identical to the serial reference regardless of thread count.
ExactDivergence divergence_actual_exact(const CodebookSpec& spec,
                                        const TargetDistribution& target,
                                        int budget_k = 24);
// Serial reference: same quantity via the step-by-step reference encoder.
ExactDivergence divergence_actual_exact_serial(const CodebookSpec& spec,
                                               const TargetDistribution& target,
                                               int budget_k = 24);

struct McDivergence {
  double div;
  double pc1;
  double stderr_div;  // standard error of the div estimate
  std::uint64_t samples;
  std::uint64_t seed;
  int workers;  // stream count the sample set depends on
};

// Monte-Carlo estimate of the actual-codebook divergence from `samples`
// uniform inputs. The sample set is split into `workers` deterministic
// streams (worker j draws from an engine seeded by (seed, j)), so results
// are reproducible for a given (seed, workers) pair; workers <= 0 picks the
// OpenMP default and the resolved count is recorded in the result.
McDivergence divergence_actual_mc(const CodebookSpec& spec, const TargetDistribution& target,
                                  std::uint64_t samples, std::uint64_t seed, int workers = 0);
// Identical streams and estimates, executed on one thread.
McDivergence divergence_actual_mc_serial(const CodebookSpec& spec,
                                         const TargetDistribution& target,
                                         std::uint64_t samples, std::uint64_t seed,
                                         int workers = 0);

struct OptimizeResult {
  int m_star;
  CodebookSpec spec;
  double div_base;
};

// Scan m over the family's legal range (CC: 0..n, 2C: 1..n, Opt: 0..n with
// weights {0..m}) and return the base-codebook divergence minimizer; ties go
// to the smaller m. Targets with p1 > 1/2 are handled by symmetry: the Opt
// family mirrors to weights {n-m..n}, which swaps the roles of 0 and 1.
OptimizeResult optimize_m(DmFamily family, int n, const TargetDistribution& target);

struct Decomposition {
  double lhs;         // divergence of the actual codebook, direct
  double entropy_pc;  // H(P_C)
  double rate_term;   // log2 |actual codebook| / n = k/n
  double kl_pc;       // D(P_C || P_A)
  double rhs;         // entropy_pc - rate_term + kl_pc
  double pc1;
};

// Evaluate both sides of the divergence decomposition
//   (1/n) D = H(P_C) - log2|C|/n + D(P_C || P_A)
// on the exactly enumerated actual codebook.
Decomposition divergence_decomposition_check(const CodebookSpec& spec,
                                             const TargetDistribution& target,
                                             int budget_k = 24);

struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 0;   // <= 0: OpenMP default
  int budget_k = 24; // exact enumeration above this k falls back to Monte-Carlo
};

struct AnalysisRow {
  int n = 0;
  std::string kind;
  int m_star = -1;  // -1 for fixed (non-optimized) kinds
  int k = 0;
  double rate = 0;
  double div_base = 0;
  double div_actual = 0;
  double pc1 = 0;
  double mc_stderr = 0;
  std::string method;  // "exact" or "monte-carlo"
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 0;
};

// One row per (n, kind): optimize m where the family supports it, then
// compute rate, base divergence, and actual divergence (exact when k fits
// the budget, Monte-Carlo otherwise).
std::vector<AnalysisRow> sweep(const std::vector<DmKind>& kinds,
                               const std::vector<int>& n_values,
                               const TargetDistribution& target, const McConfig& config);

}  // namespace mcdm
