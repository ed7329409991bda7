#include "mcdm/bitio.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

namespace mcdm {

BitFileFormat parse_bit_format(const std::string& name) {
  if (name == "ascii") return BitFileFormat::Ascii;
  if (name == "packed") return BitFileFormat::Packed;
  throw std::invalid_argument("unknown bit file format: " + name);
}

namespace {

BitVector read_ascii(std::istream& in) {
  BitVector bits;
  char c;
  while (in.get(c)) {
    if (c == '0' || c == '1')
      bits.push_back(c - '0');
    else if (c != '\n' && c != '\r' && c != '\t' && c != ' ')
      throw DataError(std::string("unexpected byte '") + c + "' in ascii bit file");
  }
  return bits;
}

BitVector read_packed(std::istream& in) {
  std::array<unsigned char, 8> header;
  in.read(reinterpret_cast<char*>(header.data()), 8);
  if (in.gcount() != 8) throw DataError("packed bit file shorter than its 8-byte header");
  std::uint64_t count = 0;
  for (int i = 7; i >= 0; --i) count = count << 8 | header[static_cast<std::size_t>(i)];
  const std::uint64_t nbytes = (count + 7) / 8;
  std::string body(nbytes, '\0');
  in.read(body.data(), static_cast<std::streamsize>(nbytes));
  if (static_cast<std::uint64_t>(in.gcount()) != nbytes)
    throw DataError("packed bit file truncated: header promises " + std::to_string(count) +
                    " bits");
  if (in.get() != std::istream::traits_type::eof())
    throw DataError("packed bit file has trailing bytes past its payload");
  BitVector bits(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const unsigned char byte = static_cast<unsigned char>(body[i / 8]);
    bits.set(i, byte >> (7 - i % 8) & 1);
  }
  return bits;
}

void write_ascii(std::ostream& out, const BitVector& bits) {
  std::string line;
  line.reserve(bits.size() + 1);
  for (int b : bits) line.push_back(char('0' + b));
  line.push_back('\n');
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
}

void write_packed(std::ostream& out, const BitVector& bits) {
  std::uint64_t count = bits.size();
  std::array<unsigned char, 8> header;
  for (int i = 0; i < 8; ++i) {
    header[static_cast<std::size_t>(i)] = static_cast<unsigned char>(count & 0xff);
    count >>= 8;
  }
  out.write(reinterpret_cast<const char*>(header.data()), 8);
  std::string body((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) body[i / 8] = static_cast<char>(body[i / 8] | 1 << (7 - i % 8));
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

}  // namespace

BitVector read_bits(std::istream& in, BitFileFormat format) {
  return format == BitFileFormat::Ascii ? read_ascii(in) : read_packed(in);
}

void write_bits(std::ostream& out, const BitVector& bits, BitFileFormat format) {
  if (format == BitFileFormat::Ascii)
    write_ascii(out, bits);
  else
    write_packed(out, bits);
}

BitVector read_bit_file(const std::string& path, BitFileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path + " for reading");
  return read_bits(in, format);
}

void write_bit_file(const std::string& path, const BitVector& bits, BitFileFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  write_bits(out, bits, format);
  out.flush();
  if (!out) throw DataError("write to " + path + " failed");
}

}  // namespace mcdm
