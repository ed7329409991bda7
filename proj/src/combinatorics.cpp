#include "mcdm/combinatorics.hpp"

#include <stdexcept>
#include <string>

#include "mcdm/codebook.hpp"

namespace mcdm {

BigCount binomial(long n, long r) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (r < 0 || r > n) return 0;
  BigCount result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(r));
  return result;
}

BigCount prefix_count(const CodebookSpec& spec, int prefix_len, int prefix_ones) {
  if (prefix_ones < 0 || prefix_ones > prefix_len || prefix_len > spec.n())
    throw std::invalid_argument("prefix_count: need 0 <= prefix_ones <= prefix_len <= n");
  BigCount total = 0;
  const long rem = spec.n() - prefix_len;
  for (int m : spec.weights()) total += binomial(rem, m - prefix_ones);
  return total;
}

PrefixCountTable::PrefixCountTable(const CodebookSpec& spec) : n_(spec.n()) {
  const auto row_start = [](int l) { return static_cast<std::size_t>(l) * (l + 1) / 2; };
  tri_.resize(row_start(n_ + 1));
  for (int o = 0; o <= n_; ++o)
    tri_[row_start(n_) + o] = spec.contains_weight(o) ? 1 : 0;
  for (int l = n_ - 1; l >= 0; --l) {
    const std::size_t here = row_start(l), below = row_start(l + 1);
    for (int o = 0; o <= l; ++o)
      tri_[here + o] = tri_[below + o] + tri_[below + o + 1];
  }
}

const BigCount& PrefixCountTable::count(int prefix_len, int prefix_ones) const {
  if (prefix_ones < 0 || prefix_ones > prefix_len || prefix_len > n_)
    throw std::invalid_argument("PrefixCountTable::count: need 0 <= prefix_ones <= prefix_len <= n");
  return tri_[static_cast<std::size_t>(prefix_len) * (prefix_len + 1) / 2 + prefix_ones];
}

}  // namespace mcdm
