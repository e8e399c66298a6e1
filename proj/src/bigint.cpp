#include "sgmask/bigint.hpp"

#include "sgmask/error.hpp"

namespace sgmask {

unsigned bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

std::vector<std::uint8_t> to_bytes(const BigInt& n) {
  std::vector<std::uint8_t> out;
  if (n == 0) return out;
  const std::size_t count = (bit_length(n) + 7) / 8;
  out.resize(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, n.get_mpz_t());
  out.resize(written);
  return out;
}

std::string to_hex(const BigInt& n) {
  static const char digits[] = "0123456789abcdef";
  std::string s;
  for (std::uint8_t b : to_bytes(n)) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

BigInt parse_decimal(const std::string& text) {
  if (text.empty()) throw Error(errc::data_format, "empty integer");
  for (char c : text) {
    if (c < '0' || c > '9')
      throw Error(errc::data_format, "bad decimal integer: " + text);
  }
  BigInt n;
  if (mpz_set_str(n.get_mpz_t(), text.c_str(), 10) != 0)
    throw Error(errc::data_format, "bad decimal integer: " + text);
  return n;
}

}  // namespace sgmask
