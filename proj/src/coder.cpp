#include "mcdm/coder.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace mcdm {

IntervalState initial_interval(const CodebookSpec& spec) {
  IntervalState s;
  s.x_num = 0;
  s.y_num = spec.size();
  return s;
}

IntervalState step(const IntervalState& state, const CodebookSpec& spec, int bit) {
  if (state.prefix_len >= spec.n())
    throw std::invalid_argument("step: prefix already has full codeword length");
  if (bit != 0 && bit != 1) throw std::invalid_argument("step: bit must be 0 or 1");
  BigCount n0 = prefix_count(spec, state.prefix_len + 1, state.prefix_ones);
  IntervalState next;
  next.prefix_len = state.prefix_len + 1;
  if (bit == 0) {
    next.x_num = state.x_num;
    next.y_num = std::move(n0);
    next.prefix_ones = state.prefix_ones;
  } else {
    next.x_num = state.x_num + n0;
    next.y_num = state.y_num - n0;
    next.prefix_ones = state.prefix_ones + 1;
  }
  return next;
}

BranchRatio branch_prob_one(const CodebookSpec& spec, int prefix_len, int prefix_ones) {
  return {prefix_count(spec, prefix_len + 1, prefix_ones + 1),
          prefix_count(spec, prefix_len, prefix_ones)};
}

BranchRatio cc_branch_prob_one(int n, int m, int prefix_len, int prefix_ones) {
  return {BigCount(m - prefix_ones), BigCount(n - prefix_len)};
}

BranchRatio two_c_branch_prob_one(int n, int m, int prefix_len, int prefix_ones) {
  return {BigCount(m - prefix_ones), BigCount(n - prefix_len + 1)};
}

namespace {

void check_data_length(const CodebookSpec& spec, const BitVector& data) {
  if (static_cast<int>(data.size()) != spec.input_length())
    throw std::invalid_argument("encode: data length " + std::to_string(data.size()) +
                                " != input length " + std::to_string(spec.input_length()));
}

void check_code_length(const CodebookSpec& spec, const BitVector& codeword) {
  if (static_cast<int>(codeword.size()) != spec.n())
    throw std::invalid_argument("decode: codeword length " + std::to_string(codeword.size()) +
                                " != n = " + std::to_string(spec.n()));
}

// Data value ceil(x * 2^k / size); the decoded point must fall back inside
// [0, 2^k) or the codeword was never selected by the encoder.
BigCount decode_point(const BigCount& x_num, const CodebookSpec& spec) {
  BigCount value = x_num << spec.input_length();
  mpz_cdiv_q(value.get_mpz_t(), value.get_mpz_t(), spec.size().get_mpz_t());
  return value;
}

}  // namespace

BitVector reference_encode(const CodebookSpec& spec, const BitVector& data) {
  check_data_length(spec, data);
  const int n = spec.n(), k = spec.input_length();
  const BigCount point = data.nbc() * spec.size();  // NBC(u) * size, compare against x * 2^k
  IntervalState state = initial_interval(spec);
  BitVector codeword(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const BigCount split = (state.x_num + prefix_count(spec, i + 1, state.prefix_ones)) << k;
    const int bit = point < split ? 0 : 1;
    codeword.set(static_cast<std::size_t>(i), bit);
    state = step(state, spec, bit);
  }
  assert(state.y_num == 1);
  return codeword;
}

BitVector reference_decode(const CodebookSpec& spec, const BitVector& codeword, bool strict) {
  check_code_length(spec, codeword);
  if (!spec.contains_weight(static_cast<int>(codeword.weight())))
    throw DataError("codeword weight not in weight set");
  IntervalState state = initial_interval(spec);
  for (int i = 0; i < spec.n(); ++i)
    state = step(state, spec, codeword[static_cast<std::size_t>(i)]);
  assert(state.y_num == 1);
  const BigCount value = decode_point(state.x_num, spec);
  if (mpz_sizeinbase(value.get_mpz_t(), 2) > static_cast<std::size_t>(spec.input_length()) &&
      value != 0)
    throw DataError("codeword not in actual codebook");
  BitVector data = BitVector::from_nbc(value, static_cast<std::size_t>(spec.input_length()));
  if (strict && reference_encode(spec, data) != codeword)
    throw DataError("codeword not in actual codebook");
  return data;
}

Encoder::Encoder(const CodebookSpec& spec)
    : spec_(&spec),
      counts_(spec.weights().size()),
      zero_counts_(spec.weights().size()) {}

BitVector Encoder::encode(const BitVector& data) {
  BitVector codeword;
  encode_into(data, codeword);
  return codeword;
}

void Encoder::encode_into(const BitVector& data, BitVector& codeword) {
  check_data_length(*spec_, data);
  encode_nbc_into(data.nbc(), codeword);
}

void Encoder::encode_nbc_into(const BigCount& value, BitVector& codeword) {
  const int n = spec_->n(), k = spec_->input_length();
  const std::size_t nw = spec_->weights().size();
  if (value < 0 || (value != 0 && mpz_sizeinbase(value.get_mpz_t(), 2) > static_cast<std::size_t>(k)))
    throw std::invalid_argument("encode: data value out of range");

  point_ = value * spec_->size();
  x_ = 0;
  for (std::size_t i = 0; i < nw; ++i) counts_[i] = spec_->weight_counts()[i];
  codeword.assign_zero(static_cast<std::size_t>(n));

  int ones = 0;
  for (int l = 0; l < n; ++l) {
    const unsigned long rem = static_cast<unsigned long>(n - l);
    // Zero branch per weight: C(rem-1, b) = C(rem, b) * (rem - b) / rem.
    n0_ = 0;
    for (std::size_t i = 0; i < nw; ++i) {
      BigCount& zc = zero_counts_[i];
      if (counts_[i] == 0) {
        zc = 0;
      } else {
        const long b = spec_->weights()[i] - ones;
        mpz_mul_ui(zc.get_mpz_t(), counts_[i].get_mpz_t(),
                   rem - static_cast<unsigned long>(b));
        mpz_divexact_ui(zc.get_mpz_t(), zc.get_mpz_t(), rem);
      }
      n0_ += zc;
    }
    threshold_ = x_ + n0_;
    threshold_ <<= k;
    if (point_ < threshold_) {
      counts_.swap(zero_counts_);
    } else {
      codeword.set(static_cast<std::size_t>(l), 1);
      ++ones;
      x_ += n0_;
      for (std::size_t i = 0; i < nw; ++i) counts_[i] -= zero_counts_[i];  // one branch
    }
  }
}

Decoder::Decoder(const CodebookSpec& spec, bool strict)
    : spec_(&spec),
      strict_(strict),
      counts_(spec.weights().size()),
      zero_counts_(spec.weights().size()),
      encoder_(spec) {}

BitVector Decoder::decode(const BitVector& codeword) {
  BitVector data;
  decode_into(codeword, data);
  return data;
}

void Decoder::decode_into(const BitVector& codeword, BitVector& data) {
  check_code_length(*spec_, codeword);
  if (!spec_->contains_weight(static_cast<int>(codeword.weight())))
    throw DataError("codeword weight not in weight set");

  const int n = spec_->n(), k = spec_->input_length();
  const std::size_t nw = spec_->weights().size();
  x_ = 0;
  for (std::size_t i = 0; i < nw; ++i) counts_[i] = spec_->weight_counts()[i];

  int ones = 0;
  for (int l = 0; l < n; ++l) {
    const unsigned long rem = static_cast<unsigned long>(n - l);
    n0_ = 0;
    for (std::size_t i = 0; i < nw; ++i) {
      BigCount& zc = zero_counts_[i];
      if (counts_[i] == 0) {
        zc = 0;
      } else {
        const long b = spec_->weights()[i] - ones;
        mpz_mul_ui(zc.get_mpz_t(), counts_[i].get_mpz_t(),
                   rem - static_cast<unsigned long>(b));
        mpz_divexact_ui(zc.get_mpz_t(), zc.get_mpz_t(), rem);
      }
      n0_ += zc;
    }
    if (codeword[static_cast<std::size_t>(l)] == 0) {
      counts_.swap(zero_counts_);
    } else {
      ++ones;
      x_ += n0_;
      for (std::size_t i = 0; i < nw; ++i) counts_[i] -= zero_counts_[i];
    }
  }

  value_ = decode_point(x_, *spec_);
  if (mpz_sizeinbase(value_.get_mpz_t(), 2) > static_cast<std::size_t>(k) && value_ != 0)
    throw DataError("codeword not in actual codebook");
  data = BitVector::from_nbc(value_, static_cast<std::size_t>(k));
  if (strict_) {
    encoder_.encode_into(data, reencoded_);
    if (reencoded_ != codeword) throw DataError("codeword not in actual codebook");
  }
}

BitVector encode(const CodebookSpec& spec, const BitVector& data) {
  return Encoder(spec).encode(data);
}

BitVector decode(const CodebookSpec& spec, const BitVector& codeword, bool strict) {
  return Decoder(spec, strict).decode(codeword);
}

}  // namespace mcdm
