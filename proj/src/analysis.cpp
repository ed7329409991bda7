#include "mcdm/analysis.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcdm/coder.hpp"

namespace mcdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int default_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Per-codeword log-probability term: log2 P(c) = w log2 p1 + (n-w) log2(1-p1).
double log_prob_slope(double p1) { return std::log2(p1) - std::log2(1 - p1); }

}  // namespace

TargetDistribution::TargetDistribution(double p) : p1(p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("TargetDistribution: p1 must lie in [0, 1]");
}

double entropy(double p1) {
  double h = 0.0;
  if (p1 > 0.0) h -= p1 * std::log2(p1);
  if (p1 < 1.0) h -= (1 - p1) * std::log2(1 - p1);
  return h;
}

double entropy(const TargetDistribution& target) { return entropy(target.p1); }

std::string DmKind::name() const {
  switch (family) {
    case DmFamily::CC: return "cc";
    case DmFamily::TwoC: return "2c";
    case DmFamily::Opt: return "opt";
    case DmFamily::Range: {
      std::ostringstream os;
      os << "range[" << m_low << "," << m_high << "]";
      return os.str();
    }
    case DmFamily::WeightSet: {
      std::ostringstream os;
      os << "set{";
      for (std::size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
      os << "}";
      return os.str();
    }
  }
  return "?";
}

double divergence_base(const CodebookSpec& spec, const TargetDistribution& target) {
  const double p1 = target.p1;
  const int n = spec.n();
  if (p1 == 0.0 || p1 == 1.0) {
    const int only = p1 == 0.0 ? 0 : n;
    const bool degenerate = spec.weights().size() == 1 && spec.weights()[0] == only;
    return degenerate ? 0.0 : kInf;
  }
  const double l1 = std::log2(p1), l0 = std::log2(1 - p1);
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.weights().size(); ++i) {
    const int m = spec.weights()[i];
    acc += big_ratio(spec.weight_counts()[i], spec.size()) * (m * l1 + (n - m) * l0);
  }
  return (-log2_big(spec.size()) - acc) / n;
}

namespace {

ExactDivergence finish_exact(const CodebookSpec& spec, const TargetDistribution& target,
                             std::uint64_t weight_sum) {
  const int n = spec.n(), k = spec.input_length();
  const std::uint64_t symbol_count = static_cast<std::uint64_t>(n) << k;
  const double total_symbols = static_cast<double>(symbol_count);
  const double pc1 = static_cast<double>(weight_sum) / total_symbols;
  double div;
  if (target.p1 == 0.0 || target.p1 == 1.0) {
    const bool matched = target.p1 == 0.0 ? weight_sum == 0 : weight_sum == symbol_count;
    div = matched ? -static_cast<double>(k) / n : kInf;
  } else {
    const double l1 = std::log2(target.p1), l0 = std::log2(1 - target.p1);
    const double ones = static_cast<double>(weight_sum);
    div = -static_cast<double>(k) / n - (ones * l1 + (total_symbols - ones) * l0) / total_symbols;
  }
  return {div, pc1, weight_sum};
}

void check_budget(const CodebookSpec& spec, int budget_k) {
  if (budget_k < 0 || budget_k > 62)
    throw std::invalid_argument("budget_k must lie in [0, 62]");
  if (spec.input_length() > budget_k)
    throw std::domain_error("exact enumeration over 2^" + std::to_string(spec.input_length()) +
                            " inputs exceeds budget; use divergence_actual_mc");
}

}  // namespace

ExactDivergence divergence_actual_exact(const CodebookSpec& spec,
                                        const TargetDistribution& target, int budget_k) {
  check_budget(spec, budget_k);
  const std::int64_t count = std::int64_t{1} << spec.input_length();
  std::uint64_t weight_sum = 0;
#ifdef _OPENMP
#pragma omp parallel reduction(+ : weight_sum)
#endif
  {
    Encoder enc(spec);
    BitVector codeword;
    BigCount value;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t j = 0; j < count; ++j) {
      value = static_cast<unsigned long>(j);
      enc.encode_nbc_into(value, codeword);
      weight_sum += codeword.weight();
    }
  }
  return finish_exact(spec, target, weight_sum);
}

ExactDivergence divergence_actual_exact_serial(const CodebookSpec& spec,
                                               const TargetDistribution& target, int budget_k) {
  check_budget(spec, budget_k);
  const std::int64_t count = std::int64_t{1} << spec.input_length();
  const std::size_t k = static_cast<std::size_t>(spec.input_length());
  std::uint64_t weight_sum = 0;
  for (std::int64_t j = 0; j < count; ++j) {
    const BitVector data = BitVector::from_nbc(BigCount(static_cast<unsigned long>(j)), k);
    weight_sum += reference_encode(spec, data).weight();
  }
  return finish_exact(spec, target, weight_sum);
}

namespace {

// One deterministic sample stream per worker index.
std::mt19937_64 worker_engine(std::uint64_t seed, int worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker)};
  return std::mt19937_64(seq);
}

// Draw a uniform k-bit NBC value, most significant chunk first.
void draw_value(std::mt19937_64& eng, int k, BigCount& value) {
  value = 0;
  int rem = k;
  while (rem > 0) {
    const int take = rem % 64 == 0 ? 64 : rem % 64;
    const std::uint64_t word = eng() & (take == 64 ? ~std::uint64_t{0}
                                                   : (std::uint64_t{1} << take) - 1);
    value <<= take;
    value += BigCount(static_cast<unsigned long>(word));
    rem -= take;
  }
}

struct McSums {
  std::uint64_t weight_sum = 0;
  std::uint64_t weight_sq_sum = 0;
};

McSums run_worker(const CodebookSpec& spec, std::uint64_t seed, int worker,
                  std::uint64_t count) {
  McSums sums;
  Encoder enc(spec);
  BitVector codeword;
  BigCount value;
  std::mt19937_64 eng = worker_engine(seed, worker);
  const int k = spec.input_length();
  for (std::uint64_t s = 0; s < count; ++s) {
    draw_value(eng, k, value);
    enc.encode_nbc_into(value, codeword);
    const std::uint64_t w = codeword.weight();
    sums.weight_sum += w;
    sums.weight_sq_sum += w * w;
  }
  return sums;
}

McDivergence finish_mc(const CodebookSpec& spec, const TargetDistribution& target,
                       std::uint64_t samples, std::uint64_t seed, int workers,
                       const McSums& sums) {
  const int n = spec.n(), k = spec.input_length();
  const double t = static_cast<double>(samples);
  const double mean_w = static_cast<double>(sums.weight_sum) / t;
  const double pc1 = mean_w / n;
  McDivergence r{};
  r.samples = samples;
  r.seed = seed;
  r.workers = workers;
  r.pc1 = pc1;
  if (target.p1 == 0.0 || target.p1 == 1.0) {
    const bool matched = target.p1 == 0.0 ? sums.weight_sum == 0
                                          : sums.weight_sum == samples * static_cast<std::uint64_t>(n);
    r.div = matched ? -static_cast<double>(k) / n : kInf;
    r.stderr_div = 0.0;
    return r;
  }
  const double l1 = std::log2(target.p1), l0 = std::log2(1 - target.p1);
  r.div = -static_cast<double>(k) / n - (mean_w * l1 + (n - mean_w) * l0) / n;
  if (samples > 1) {
    // div is affine in the codeword weight; its spread is the weight's.
    const double var_w = (static_cast<double>(sums.weight_sq_sum) - t * mean_w * mean_w) / (t - 1);
    const double slope = log_prob_slope(target.p1) / n;
    r.stderr_div = std::abs(slope) * std::sqrt(std::max(var_w, 0.0) / t);
  }
  return r;
}

std::uint64_t worker_share(std::uint64_t samples, int workers, int j) {
  return samples / workers + (static_cast<std::uint64_t>(j) < samples % workers ? 1 : 0);
}

}  // namespace

McDivergence divergence_actual_mc(const CodebookSpec& spec, const TargetDistribution& target,
                                  std::uint64_t samples, std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("divergence_actual_mc: samples must be >= 1");
  int w = workers > 0 ? workers : default_workers();
  if (static_cast<std::uint64_t>(w) > samples) w = static_cast<int>(samples);
  std::uint64_t weight_sum = 0, weight_sq_sum = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static, 1) reduction(+ : weight_sum, weight_sq_sum)
#endif
  for (int j = 0; j < w; ++j) {
    const McSums s = run_worker(spec, seed, j, worker_share(samples, w, j));
    weight_sum += s.weight_sum;
    weight_sq_sum += s.weight_sq_sum;
  }
  return finish_mc(spec, target, samples, seed, w, {weight_sum, weight_sq_sum});
}

McDivergence divergence_actual_mc_serial(const CodebookSpec& spec,
                                         const TargetDistribution& target,
                                         std::uint64_t samples, std::uint64_t seed,
                                         int workers) {
  if (samples < 1) throw std::invalid_argument("divergence_actual_mc: samples must be >= 1");
  int w = workers > 0 ? workers : default_workers();
  if (static_cast<std::uint64_t>(w) > samples) w = static_cast<int>(samples);
  McSums total;
  for (int j = 0; j < w; ++j) {
    const McSums s = run_worker(spec, seed, j, worker_share(samples, w, j));
    total.weight_sum += s.weight_sum;
    total.weight_sq_sum += s.weight_sq_sum;
  }
  return finish_mc(spec, target, samples, seed, w, total);
}

namespace {

CodebookSpec build_family(DmFamily family, int n, int m, bool mirrored) {
  switch (family) {
    case DmFamily::CC: return make_cc(n, m);
    case DmFamily::TwoC: return make_2c(n, m);
    case DmFamily::Opt: return mirrored ? make_range(n, n - m, n) : make_range(n, 0, m);
    default: throw std::invalid_argument("optimize_m: family must be CC, TwoC or Opt");
  }
}

}  // namespace

OptimizeResult optimize_m(DmFamily family, int n, const TargetDistribution& target) {
  if (!(target.p1 > 0.0 && target.p1 < 1.0))
    throw std::invalid_argument("optimize_m: p1 must lie strictly inside (0, 1)");
  if (n < 1) throw std::invalid_argument("optimize_m: n must be >= 1");
  const bool mirrored = family == DmFamily::Opt && target.p1 > 0.5;
  const double l1 = std::log2(target.p1), l0 = std::log2(1 - target.p1);
  // log-probability of one codeword of weight w; mirrored scan re-labels
  // weight w as n - w, which is where the 0/1 swap happens.
  const auto term = [&](int w) {
    const int eff = mirrored ? n - w : w;
    return eff * l1 + (n - eff) * l0;
  };

  const int m_first = family == DmFamily::TwoC ? 1 : 0;
  int best_m = -1;
  double best_div = kInf;

  // Incremental scan: keep the running size M and the size-weighted mean of
  // term(w) so each candidate m costs O(1) big-integer work.
  BigCount size = 0, next_binom = 1;  // C(n, 0)
  double mean_term = 0.0;
  for (int m = 0; m <= n; ++m) {
    double div;
    switch (family) {
      case DmFamily::CC: {
        const BigCount c = binomial(n, m);
        div = (-log2_big(c) - term(m)) / n;
        break;
      }
      case DmFamily::TwoC: {
        if (m == 0) { div = kInf; break; }
        const BigCount a = binomial(n, m - 1), b = binomial(n, m);
        const BigCount sum = a + b;
        const double avg = big_ratio(a, sum) * term(m - 1) + big_ratio(b, sum) * term(m);
        div = (-log2_big(sum) - avg) / n;
        break;
      }
      case DmFamily::Opt: {
        // size and mean extended by weight m
        const BigCount new_size = size + next_binom;
        const double share = big_ratio(next_binom, new_size);
        mean_term = mean_term * (1.0 - share) + term(m) * share;
        size = new_size;
        if (m < n) {
          next_binom *= static_cast<unsigned long>(n - m);
          mpz_divexact_ui(next_binom.get_mpz_t(), next_binom.get_mpz_t(),
                          static_cast<unsigned long>(m + 1));
        }
        div = (-log2_big(size) - mean_term) / n;
        break;
      }
      default:
        throw std::invalid_argument("optimize_m: family must be CC, TwoC or Opt");
    }
    if (m >= m_first && div < best_div) {
      best_div = div;
      best_m = m;
    }
  }
  CodebookSpec spec = build_family(family, n, best_m, mirrored);
  const double div = divergence_base(spec, target);
  return {best_m, std::move(spec), div};
}

Decomposition divergence_decomposition_check(const CodebookSpec& spec,
                                             const TargetDistribution& target, int budget_k) {
  if (!(target.p1 > 0.0 && target.p1 < 1.0))
    throw std::invalid_argument("decomposition check: p1 must lie strictly inside (0, 1)");
  const ExactDivergence ex = divergence_actual_exact(spec, target, budget_k);
  Decomposition d{};
  d.lhs = ex.div;
  d.pc1 = ex.pc1;
  d.entropy_pc = entropy(ex.pc1);
  d.rate_term = static_cast<double>(spec.input_length()) / spec.n();
  double kl = 0.0;
  if (ex.pc1 > 0.0) kl += ex.pc1 * std::log2(ex.pc1 / target.p1);
  if (ex.pc1 < 1.0) kl += (1 - ex.pc1) * std::log2((1 - ex.pc1) / (1 - target.p1));
  d.kl_pc = kl;
  d.rhs = d.entropy_pc - d.rate_term + d.kl_pc;
  return d;
}

std::vector<AnalysisRow> sweep(const std::vector<DmKind>& kinds,
                               const std::vector<int>& n_values,
                               const TargetDistribution& target, const McConfig& config) {
  std::vector<AnalysisRow> rows;
  rows.reserve(kinds.size() * n_values.size());
  for (int n : n_values) {
    for (const DmKind& kind : kinds) {
      AnalysisRow row;
      row.n = n;
      row.kind = kind.name();
      CodebookSpec spec = [&]() -> CodebookSpec {
        switch (kind.family) {
          case DmFamily::CC:
          case DmFamily::TwoC:
          case DmFamily::Opt: {
            OptimizeResult opt = optimize_m(kind.family, n, target);
            row.m_star = opt.m_star;
            row.div_base = opt.div_base;
            return std::move(opt.spec);
          }
          case DmFamily::Range: {
            CodebookSpec s = make_range(n, kind.m_low, kind.m_high);
            row.div_base = divergence_base(s, target);
            return s;
          }
          case DmFamily::WeightSet: {
            CodebookSpec s = make_weight_set(n, kind.weights);
            row.div_base = divergence_base(s, target);
            return s;
          }
        }
        throw std::logic_error("sweep: unhandled kind");
      }();
      row.k = spec.input_length();
      row.rate = static_cast<double>(row.k) / n;
      if (spec.input_length() <= config.budget_k) {
        const ExactDivergence ex = divergence_actual_exact(spec, target, config.budget_k);
        row.div_actual = ex.div;
        row.pc1 = ex.pc1;
        row.method = "exact";
      } else {
        const McDivergence mc =
            divergence_actual_mc(spec, target, config.samples, config.seed, config.workers);
        row.div_actual = mc.div;
        row.pc1 = mc.pc1;
        row.mc_stderr = mc.stderr_div;
        row.method = "monte-carlo";
        row.samples = mc.samples;
        row.seed = mc.seed;
        row.workers = mc.workers;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace mcdm
