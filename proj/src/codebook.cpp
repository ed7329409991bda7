#include "mcdm/codebook.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mcdm {

BitVector BitVector::from_string(std::string_view s) {
  BitVector v;
  v.bits_.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("BitVector::from_string: expected only '0'/'1'");
    v.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return v;
}

BitVector BitVector::from_nbc(const BigCount& value, std::size_t len) {
  if (value < 0 || (value != 0 && mpz_sizeinbase(value.get_mpz_t(), 2) > len))
    throw std::invalid_argument("BitVector::from_nbc: value does not fit in " +
                                std::to_string(len) + " bits");
  BitVector v(len);
  for (std::size_t i = 0; i < len; ++i)
    if (mpz_tstbit(value.get_mpz_t(), static_cast<mp_bitcnt_t>(len - 1 - i)))
      v.bits_[i] = 1;
  return v;
}

void BitVector::assign_zero(std::size_t len) {
  bits_.assign(len, 0);
}

std::size_t BitVector::weight() const {
  return static_cast<std::size_t>(std::accumulate(bits_.begin(), bits_.end(), std::size_t{0}));
}

BigCount BitVector::nbc() const {
  BigCount value = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) mpz_setbit(value.get_mpz_t(), static_cast<mp_bitcnt_t>(bits_.size() - 1 - i));
  return value;
}

std::string BitVector::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = char('0' + bits_[i]);
  return s;
}

std::ostream& operator<<(std::ostream& os, const BitVector& v) {
  return os << v.str();
}

CodebookSpec::CodebookSpec(int n, std::vector<int> weights)
    : n_(n), weights_(std::move(weights)) {
  if (n_ < 1) throw std::invalid_argument("CodebookSpec: n must be >= 1");
  if (weights_.empty()) throw std::invalid_argument("CodebookSpec: weight set must be non-empty");
  std::sort(weights_.begin(), weights_.end());
  weights_.erase(std::unique(weights_.begin(), weights_.end()), weights_.end());
  if (weights_.front() < 0 || weights_.back() > n_)
    throw std::invalid_argument("CodebookSpec: weights must lie in [0, n]");
  weight_counts_.reserve(weights_.size());
  size_ = 0;
  for (int m : weights_) {
    weight_counts_.push_back(binomial(n_, m));
    size_ += weight_counts_.back();
  }
  k_ = static_cast<int>(mpz_sizeinbase(size_.get_mpz_t(), 2)) - 1;
}

bool CodebookSpec::contains_weight(int w) const {
  return std::binary_search(weights_.begin(), weights_.end(), w);
}

std::string CodebookSpec::describe() const {
  std::ostringstream os;
  os << "n=" << n_ << " weights={";
  for (std::size_t i = 0; i < weights_.size();) {
    std::size_t j = i;
    while (j + 1 < weights_.size() && weights_[j + 1] == weights_[j] + 1) ++j;
    if (i) os << ",";
    if (j > i + 1)
      os << weights_[i] << ".." << weights_[j];
    else if (j == i + 1)
      os << weights_[i] << "," << weights_[j];
    else
      os << weights_[i];
    i = j + 1;
  }
  os << "}";
  return os.str();
}

CodebookSpec make_cc(int n, int m) {
  if (m < 0 || m > n) throw std::invalid_argument("make_cc: need 0 <= m <= n");
  return CodebookSpec(n, {m});
}

CodebookSpec make_2c(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("make_2c: need 1 <= m <= n");
  return CodebookSpec(n, {m - 1, m});
}

CodebookSpec make_range(int n, int m_low, int m_high) {
  if (m_low < 0 || m_low > m_high || m_high > n)
    throw std::invalid_argument("make_range: need 0 <= m_low <= m_high <= n");
  std::vector<int> w(static_cast<std::size_t>(m_high - m_low + 1));
  std::iota(w.begin(), w.end(), m_low);
  return CodebookSpec(n, std::move(w));
}

CodebookSpec make_weight_set(int n, std::vector<int> weights) {
  return CodebookSpec(n, std::move(weights));
}

namespace {

// Shared walk for both count back-ends.
template <typename ZeroBranch>
BitVector unrank_walk(int n, const BigCount& total, const BigCount& index, ZeroBranch zero_branch) {
  if (index < 0 || index >= total)
    throw std::invalid_argument("unrank: index out of range");
  BitVector code(static_cast<std::size_t>(n));
  BigCount rem = index;
  int ones = 0;
  for (int l = 0; l < n; ++l) {
    const BigCount n0 = zero_branch(l + 1, ones);
    if (rem < n0) continue;  // bit stays 0
    rem -= n0;
    code.set(static_cast<std::size_t>(l), 1);
    ++ones;
  }
  return code;
}

template <typename ZeroBranch>
BigCount rank_walk(int n, const BitVector& codeword, bool in_book, ZeroBranch zero_branch) {
  if (static_cast<int>(codeword.size()) != n)
    throw std::invalid_argument("rank: codeword length mismatch");
  if (!in_book) throw DataError("rank: codeword weight not in weight set");
  BigCount position = 0;
  int ones = 0;
  for (int l = 0; l < n; ++l) {
    if (codeword[static_cast<std::size_t>(l)]) {
      position += zero_branch(l + 1, ones);
      ++ones;
    }
  }
  return position;
}

}  // namespace

BitVector unrank(const CodebookSpec& spec, const BigCount& index) {
  return unrank_walk(spec.n(), spec.size(), index,
                     [&](int l, int o) { return prefix_count(spec, l, o); });
}

BitVector unrank(const PrefixCountTable& counts, const BigCount& index) {
  return unrank_walk(counts.n(), counts.total(), index,
                     [&](int l, int o) { return counts.count(l, o); });
}

BigCount rank(const CodebookSpec& spec, const BitVector& codeword) {
  return rank_walk(spec.n(), codeword,
                   spec.contains_weight(static_cast<int>(codeword.weight())),
                   [&](int l, int o) { return prefix_count(spec, l, o); });
}

BigCount rank(const PrefixCountTable& counts, const BitVector& codeword) {
  return rank_walk(counts.n(), codeword,
                   counts.count(counts.n(), static_cast<int>(codeword.weight())) == 1,
                   [&](int l, int o) -> BigCount { return counts.count(l, o); });
}

}  // namespace mcdm
