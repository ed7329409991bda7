#pragma once

#include <vector>

#include "mcdm/codebook.hpp"

namespace mcdm {

// Exact arithmetic-coding interval [x, x+y) over [0,1), both endpoints
// scaled by the codebook size so everything stays integer:
//
//   x = x_num / |codebook|,  y = y_num / |codebook|
//
// The width invariant ties the interval to the counting layer: y_num always
// equals the number of codewords sharing the current prefix,
// prefix_count(spec, prefix_len, prefix_ones).
struct IntervalState {
  BigCount x_num;
  BigCount y_num;
  int prefix_len = 0;
  int prefix_ones = 0;
};

// x = 0, y = 1 in scaled form.
IntervalState initial_interval(const CodebookSpec& spec);

// Extend the prefix by one bit. Appending 0 keeps x and shrinks y to the
// zero-branch count; appending 1 advances x past the zero branch.
IntervalState step(const IntervalState& state, const CodebookSpec& spec, int bit);

// Conditional probability of the next bit being 1 as an exact fraction.
struct BranchRatio {
  BigCount num;
  BigCount den;
};

// Generic model: N(prefix+1) / N(prefix).
BranchRatio branch_prob_one(const CodebookSpec& spec, int prefix_len, int prefix_ones);
// Closed form for a single-weight codebook: (m - ones) / (n - len).
BranchRatio cc_branch_prob_one(int n, int m, int prefix_len, int prefix_ones);
// Closed form for weights {m-1, m}: (m - ones) / (n - len + 1).
BranchRatio two_c_branch_prob_one(int n, int m, int prefix_len, int prefix_ones);

// Plain step-by-step coder, one prefix_count evaluation per bit. Kept as the
// readable serial reference; the Encoder/Decoder classes below produce
// identical output.
BitVector reference_encode(const CodebookSpec& spec, const BitVector& data);
BitVector reference_decode(const CodebookSpec& spec, const BitVector& codeword,
                           bool strict = false);

// Production encoder. Maintains one running count per weight,
// C(n - len, m - ones), updated in place each step, so a full encode costs
// O(n * |weights|) word-sized big-integer operations instead of fresh
// binomial evaluations. Reusable across blocks; not shareable between
// threads mid-operation.
class Encoder {
 public:
  explicit Encoder(const CodebookSpec& spec);

  const CodebookSpec& spec() const { return *spec_; }

  BitVector encode(const BitVector& data);
  void encode_into(const BitVector& data, BitVector& codeword);
  // Same mapping with the data given as its NBC value (0 <= value < 2^k).
  void encode_nbc_into(const BigCount& value, BitVector& codeword);

 private:
  const CodebookSpec* spec_;
  std::vector<BigCount> counts_;       // per-weight C(n - len, m - ones)
  std::vector<BigCount> zero_counts_;  // per-weight zero-branch counts
  BigCount point_, x_, n0_, threshold_;
};

// Production decoder; same incremental counts driven by the codeword bits.
// With strict on, the decoded data is re-encoded and must reproduce the
// codeword, rejecting words of the base codebook the encoder never emits.
class Decoder {
 public:
  explicit Decoder(const CodebookSpec& spec, bool strict = false);

  const CodebookSpec& spec() const { return *spec_; }
  bool strict() const { return strict_; }

  BitVector decode(const BitVector& codeword);
  void decode_into(const BitVector& codeword, BitVector& data);

 private:
  const CodebookSpec* spec_;
  bool strict_;
  std::vector<BigCount> counts_;
  std::vector<BigCount> zero_counts_;
  BigCount x_, n0_, value_;
  BitVector reencoded_;
  Encoder encoder_;
};

BitVector encode(const CodebookSpec& spec, const BitVector& data);
BitVector decode(const CodebookSpec& spec, const BitVector& codeword, bool strict = false);

}  // namespace mcdm
