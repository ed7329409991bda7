#pragma once

#include <gmpxx.h>

namespace mcdm {

// Arbitrary-precision non-negative count. All codebook sizes and prefix
// counts are exact integers; nothing in the counting layer touches
// floating point.
using BigCount = mpz_class;

// log2 of a positive count, usable far beyond the range of double.
double log2_big(const BigCount& value);

// num/den as a double. Handles operands of wildly different magnitude
// (ratios like 1/|codebook| at block lengths of a few thousand).
double big_ratio(const BigCount& num, const BigCount& den);

}  // namespace mcdm
