#include "doctest.h"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"
#include "sgmask/rng.hpp"

#include <cstdint>
#include <vector>

using namespace sgmask;

namespace {

// Independent oracle: repeated multiplication, no square-and-multiply.
BigInt naive_mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m) {
  BigInt acc = 1 % m;
  for (BigInt i = 0; i < exp; ++i) acc = (acc * base) % m;
  return acc;
}

// Independent oracle: first common multiple by enumeration.
BigInt naive_lcm(const BigInt& a, const BigInt& b) {
  BigInt c = a;
  while (c % b != 0) c += a;
  return c;
}

// Independent oracle: scan the full residue range for both congruences.
BigInt naive_crt(const BigInt& a1, const BigInt& m1, const BigInt& a2,
                 const BigInt& m2) {
  for (BigInt x = 0; x < m1 * m2; ++x)
    if (x % m1 == a1 % m1 && x % m2 == a2 % m2) return x;
  return -1;
}

// Independent oracle: deterministic trial division.
bool naive_is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("rng streams are deterministic and splittable") {
  Rng a(42), b(42);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng parent(7);
  Rng child = parent.split();
  Rng parent2(7);
  Rng child2 = parent2.split();
  for (int i = 0; i < 16; ++i) CHECK(child.next_u64() == child2.next_u64());

  Rng r(1);
  for (int i = 0; i < 200; ++i) {
    const BigInt v = r.below(1000);
    CHECK(v >= 0);
    CHECK(v < 1000);
  }
  for (int i = 0; i < 200; ++i) {
    const BigInt v = r.in_range(10, 20);
    CHECK(v >= 10);
    CHECK(v <= 20);
  }
  CHECK(r.below(1) == 0);
}

TEST_CASE("mod_pow frozen examples") {
  CHECK(mod_pow(3, 0, 7) == 1);
  CHECK(naive_mod_pow(10, 6, 31) == 2);
  CHECK(mod_pow(10, 6, 31) == 2);
  CHECK(naive_mod_pow(5, 3, 31) == 1);
  CHECK(mod_pow(5, 3, 31) == 1);
  CHECK_THROWS_AS(mod_pow(3, 4, 1), Error);
  CHECK_THROWS_AS(mod_pow(3, 4, 0), Error);
}

TEST_CASE("mod_pow agrees with repeated multiplication") {
  for (unsigned m = 2; m <= 64; ++m)
    for (unsigned base = 0; base < 64; ++base)
      for (unsigned exp = 0; exp < 64; ++exp)
        CHECK(mod_pow(base, exp, m) == naive_mod_pow(base, exp, m));

  Rng rng(1234);
  for (int i = 0; i < 2000; ++i) {
    const BigInt m = rng.in_range(2, 1023);
    const BigInt base = rng.below(1024);
    const BigInt exp = rng.below(1024);
    CHECK(mod_pow(base, exp, m) == naive_mod_pow(base, exp, m));
  }
}

TEST_CASE("ext_gcd frozen examples and identity") {
  const ExtGcd a = ext_gcd(3, 5);
  CHECK(a.g == 1);
  CHECK(a.u == 2);
  CHECK(a.v == -1);

  CHECK(ext_gcd(12, 18).g == 6);
  const ExtGcd c = ext_gcd(1, 999);
  CHECK(c.g == 1);
  CHECK(c.u == 1);
  CHECK(c.v == 0);

  CHECK_THROWS_AS(ext_gcd(0, 0), Error);

  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const BigInt x = rng.below(1 << 20);
    const BigInt y = rng.below(1 << 20);
    if (x == 0 && y == 0) continue;
    const ExtGcd r = ext_gcd(x, y);
    CHECK(r.u * x + r.v * y == r.g);
    if (x != 0) CHECK(x % r.g == 0);
    if (y != 0) CHECK(y % r.g == 0);
  }
}

TEST_CASE("mod_inv frozen examples and roundtrip") {
  CHECK(mod_inv(3, 5) == 2);
  CHECK(mod_inv(1, 7) == 1);

  try {
    mod_inv(4, 8);
    FAIL("expected not_invertible");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_invertible);
    REQUIRE(e.detail().has_value());
    CHECK(*e.detail() == 4);
  }

  Rng rng(7);
  int checked = 0;
  while (checked < 500) {
    const BigInt m = rng.in_range(2, 1 << 16);
    const BigInt a = rng.in_range(1, m - 1);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (g != 1) continue;
    const BigInt inv = mod_inv(a, m);
    CHECK(inv >= 1);
    CHECK(inv < m);
    CHECK((a * inv) % m == 1 % m);
    ++checked;
  }
}

TEST_CASE("lcm frozen examples") {
  CHECK(naive_lcm(6, 10) == 30);
  CHECK(lcm(6, 10) == 30);
  CHECK(naive_lcm(3, 5) == 15);
  CHECK(lcm(3, 5) == 15);
  CHECK(lcm(7, 7) == 7);
  CHECK_THROWS_AS(lcm(0, 3), Error);
  CHECK_THROWS_AS(lcm(3, 0), Error);
}

TEST_CASE("crt_pair frozen examples and post-conditions") {
  CHECK(naive_crt(2, 7, 1, 11) == 23);
  CHECK(crt_pair(2, 7, 1, 11) == 23);
  CHECK(naive_crt(1, 7, 3, 11) == 36);
  CHECK(crt_pair(1, 7, 3, 11) == 36);
  CHECK(crt_pair(0, 3, 0, 5) == 0);

  try {
    crt_pair(1, 6, 2, 10);
    FAIL("expected crt_moduli");
  } catch (const Error& e) {
    CHECK(e.code() == errc::crt_moduli);
  }

  Rng rng(21);
  int checked = 0;
  while (checked < 500) {
    const BigInt m1 = rng.in_range(1, 1 << 12);
    const BigInt m2 = rng.in_range(1, 1 << 12);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (g != 1) continue;
    const BigInt a1 = rng.below(m1);
    const BigInt a2 = rng.below(m2);
    const BigInt x = crt_pair(a1, m1, a2, m2);
    CHECK(x >= 0);
    CHECK(x < m1 * m2);
    CHECK(x % m1 == a1);
    CHECK(x % m2 == a2);
    ++checked;
  }
}

TEST_CASE("is_probable_prime matches trial division below 10^6") {
  Rng rng(3);
  CHECK_THROWS_AS(is_probable_prime(31, 0, rng), Error);
  CHECK(is_probable_prime(31, 64, rng));
  CHECK_FALSE(is_probable_prime(77, 64, rng));
  // Carmichael number 561 = 3*11*17 must be rejected
  CHECK_FALSE(is_probable_prime(561, 64, rng));

  BigInt m;
  for (std::uint64_t v = 0; v < 1000000; ++v) {
    m = static_cast<unsigned long>(v);
    if (is_probable_prime(m, 2, rng) != naive_is_prime(v)) {
      CAPTURE(v);
      FAIL("primality disagreement");
    }
  }
}

TEST_CASE("is_probable_prime handles larger known values") {
  Rng rng(4);
  // 2^61 - 1 is a Mersenne prime; 2^67 - 1 = 193707721 * 761838257287
  CHECK(is_probable_prime((BigInt(1) << 61) - 1, 64, rng));
  CHECK_FALSE(is_probable_prime((BigInt(1) << 67) - 1, 64, rng));
  const BigInt big("170141183460469231731687303715884105727");  // 2^127 - 1
  CHECK(is_probable_prime(big, 64, rng));
  CHECK_FALSE(is_probable_prime(big + 2, 64, rng));
}

TEST_CASE("gen_prime_with_factor frozen examples") {
  {
    Rng rng(11);
    const PrimeWithFactor r = gen_prime_with_factor(15, 5, rng);
    CHECK(r.p == 31);  // the only 5-bit prime of the form 1 + 30x
    CHECK(r.x == 1);
  }
  {
    Rng rng(12);
    const PrimeWithFactor r = gen_prime_with_factor(1, 3, rng);
    CHECK((r.p == 5 || r.p == 7));
  }
  {
    Rng rng(13);
    try {
      gen_prime_with_factor(BigInt(1) << 8, 8, rng);
      FAIL("expected search_failure for an empty range");
    } catch (const Error& e) {
      CHECK(e.code() == errc::search_failure);
    }
  }
}

TEST_CASE("gen_prime_with_factor output shape") {
  Rng rng(14);
  const std::vector<std::pair<unsigned long, unsigned>> cases = {
      {15, 24}, {7, 32}, {1, 20}, {105, 48}, {4, 24}};
  for (const auto& [r, bits] : cases) {
    const PrimeWithFactor out = gen_prime_with_factor(r, bits, rng);
    CHECK(bit_length(out.p) == bits);
    CHECK(out.p == 1 + 2 * BigInt(r) * out.x);
    CHECK((out.p - 1) % (2 * BigInt(r)) == 0);
    CHECK(is_probable_prime(out.p, 64, rng));
  }
}

TEST_CASE("parse_decimal is strict") {
  CHECK(parse_decimal("0") == 0);
  CHECK(parse_decimal("123456789012345678901234567890") ==
        BigInt("123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_decimal(""), Error);
  CHECK_THROWS_AS(parse_decimal("-3"), Error);
  CHECK_THROWS_AS(parse_decimal("12 3"), Error);
  CHECK_THROWS_AS(parse_decimal("0x10"), Error);
}

TEST_CASE("byte encoding is big-endian and minimal") {
  CHECK(to_bytes(0).empty());
  CHECK(to_bytes(30) == std::vector<std::uint8_t>{0x1e});
  CHECK(to_bytes(0x213) == std::vector<std::uint8_t>{0x02, 0x13});
  CHECK(to_hex(30) == "1e");
  CHECK(bit_length(0) == 0);
  CHECK(bit_length(1) == 1);
  CHECK(bit_length(31) == 5);
  CHECK(bit_length(32) == 6);
}
