#pragma once

#include <vector>

#include "mcdm/bigint.hpp"

namespace mcdm {

class CodebookSpec;

// Binomial coefficient C(n, r). Returns 0 whenever r < 0 or r > n, so sums
// over weight sets never need range guards.
BigCount binomial(long n, long r);

// Number of codewords in the base codebook whose first prefix_len bits
// contain exactly prefix_ones ones. Depends on the prefix only through
// (prefix_len, prefix_ones):
//
//   N(l, o) = sum over weights m of C(n - l, m - o)
//
// Requires 0 <= prefix_ones <= prefix_len <= n.
BigCount prefix_count(const CodebookSpec& spec, int prefix_len, int prefix_ones);

// Dense table of all prefix counts for one codebook, at most n^2/2 entries.
// Filled bottom-up from the full-length row using N(l,o) = N(l+1,o) +
// N(l+1,o+1), i.e. without evaluating a single binomial — an independent
// route to the same numbers as prefix_count().
class PrefixCountTable {
 public:
  explicit PrefixCountTable(const CodebookSpec& spec);

  int n() const { return n_; }
  const BigCount& total() const { return tri_[0]; }
  const BigCount& count(int prefix_len, int prefix_ones) const;

 private:
  int n_;
  std::vector<BigCount> tri_;  // row l occupies [l(l+1)/2, l(l+1)/2 + l]
};

}  // namespace mcdm
