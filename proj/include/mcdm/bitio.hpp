#pragma once

#include <iosfwd>
#include <string>

#include "mcdm/codebook.hpp"

namespace mcdm {

// ascii: one byte '0'/'1' per bit, whitespace ignored on read.
// packed: 8-byte little-endian bit count, then the bits packed MSB-first.
enum class BitFileFormat { Ascii, Packed };

BitFileFormat parse_bit_format(const std::string& name);

BitVector read_bits(std::istream& in, BitFileFormat format);
void write_bits(std::ostream& out, const BitVector& bits, BitFileFormat format);

BitVector read_bit_file(const std::string& path, BitFileFormat format);
void write_bit_file(const std::string& path, const BitVector& bits, BitFileFormat format);

}  // namespace mcdm
