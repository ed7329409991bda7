#include "mcdm/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace mcdm {

double log2_big(const BigCount& value) {
  if (value <= 0) throw std::invalid_argument("log2_big: value must be positive");
  signed long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());  // value = mant * 2^exp, mant in [0.5, 1)
  return std::log2(mant) + static_cast<double>(exp);
}

double big_ratio(const BigCount& num, const BigCount& den) {
  if (den <= 0) throw std::invalid_argument("big_ratio: denominator must be positive");
  if (num == 0) return 0.0;
  signed long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

}  // namespace mcdm
