#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcdm/bigint.hpp"
#include "mcdm/combinatorics.hpp"

namespace mcdm {

// Thrown when input data (as opposed to arguments) is malformed: codewords
// outside the codebook, truncated bit files, and the like.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered sequence of bits. Index 0 is the most significant bit for NBC
// purposes (natural binary code, first bit carries the highest power of 2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : bits_(len, 0) {}

  static BitVector from_string(std::string_view s);
  // The len-bit NBC representation of value; requires 0 <= value < 2^len.
  static BitVector from_nbc(const BigCount& value, std::size_t len);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int bit) { bits_[i] = static_cast<std::uint8_t>(bit & 1); }
  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
  void clear() { bits_.clear(); }
  // Resize to len and zero-fill, reusing storage.
  void assign_zero(std::size_t len);

  std::size_t weight() const;           // number of ones
  std::size_t count_zeros() const { return size() - weight(); }
  BigCount nbc() const;                 // integer value, bit 0 most significant
  std::string str() const;

  auto begin() const { return bits_.begin(); }
  auto end() const { return bits_.end(); }
  bool operator==(const BitVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const BitVector& v);

// A base codebook: all length-n binary words whose Hamming weight lies in a
// fixed set of weights. Immutable after construction; size and input length
// are computed once, exactly.
class CodebookSpec {
 public:
  // Weights are sorted and deduplicated; each must lie in [0, n], and the
  // set must be non-empty.
  CodebookSpec(int n, std::vector<int> weights);

  int n() const { return n_; }
  const std::vector<int>& weights() const { return weights_; }
  bool contains_weight(int w) const;

  // |codebook| = sum over weights m of C(n, m).
  const BigCount& size() const { return size_; }
  // k = floor(log2 size): number of data bits per codeword.
  int input_length() const { return k_; }
  // C(n, m) per weight, in weight order; the coder's starting counts.
  const std::vector<BigCount>& weight_counts() const { return weight_counts_; }

  std::string describe() const;  // e.g. "n=4 weights={1,3}"

 private:
  int n_;
  std::vector<int> weights_;
  std::vector<BigCount> weight_counts_;
  BigCount size_;
  int k_;
};

CodebookSpec make_cc(int n, int m);                       // weights {m}
CodebookSpec make_2c(int n, int m);                       // weights {m-1, m}
CodebookSpec make_range(int n, int m_low, int m_high);    // weights {m_low..m_high}
CodebookSpec make_weight_set(int n, std::vector<int> weights);

// Codeword at position `index` in lexicographic order (0 < 1, first bit most
// significant). Built bit by bit: emit 0 while index < N(prefix+0), else
// subtract and emit 1.
BitVector unrank(const CodebookSpec& spec, const BigCount& index);
BitVector unrank(const PrefixCountTable& counts, const BigCount& index);

// Lexicographic position of a codeword of the base codebook; inverse of
// unrank.
BigCount rank(const CodebookSpec& spec, const BitVector& codeword);
BigCount rank(const PrefixCountTable& counts, const BitVector& codeword);

}  // namespace mcdm
