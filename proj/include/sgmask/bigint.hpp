// Arbitrary-precision integer type and small conversion helpers.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace sgmask {

// All moduli, exponents and residues are non-negative big integers.
using BigInt = mpz_class;

// Number of significant bits; bit_length(0) == 0.
unsigned bit_length(const BigInt& n);

// Canonical byte encoding: big-endian, minimal length, empty for zero.
std::vector<std::uint8_t> to_bytes(const BigInt& n);

// Lowercase hex of the canonical byte encoding ("" for zero).
std::string to_hex(const BigInt& n);

// Strict non-negative decimal parse; rejects signs, blanks and garbage.
BigInt parse_decimal(const std::string& text);

}  // namespace sgmask
