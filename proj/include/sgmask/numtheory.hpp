// Modular arithmetic, gcd/lcm, CRT, primality and constrained prime search.
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/rng.hpp"

#include <cstdint>
#include <vector>

namespace sgmask {

// Smoothness bound used wherever a number must factor completely by trial
// division (prime-search cofactors, user-supplied subgroup orders).
inline constexpr std::uint32_t kSmoothBound = 1u << 20;

// Primes below kSmoothBound, ascending; built once on first use.
const std::vector<std::uint32_t>& small_primes();

// base^exp mod m, in [0, m-1].  m < 2 raises invalid_modulus.
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m);

struct ExtGcd {
  BigInt g;  // gcd(a, b)
  BigInt u;  // u*a + v*b == g (u, v may be negative)
  BigInt v;
};

// Extended Euclid; a == b == 0 raises undefined_gcd.
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

// Inverse of a mod m, in [1, m-1].  Raises not_invertible carrying
// gcd(a, m) when the inverse does not exist.
BigInt mod_inv(const BigInt& a, const BigInt& m);

// Least common multiple; zero arguments raise invalid_argument.
BigInt lcm(const BigInt& a, const BigInt& b);

// Unique x in [0, m1*m2-1] with x = a1 (mod m1), x = a2 (mod m2).
// Non-coprime moduli raise crt_moduli.
BigInt crt_pair(const BigInt& a1, const BigInt& m1, const BigInt& a2,
                const BigInt& m2);

// Trial division by primes below 1000, then Miller-Rabin.  Below 2^64 a
// fixed base set makes the answer deterministic and the rng is untouched;
// above, `rounds` random bases are drawn.
bool is_probable_prime(const BigInt& m, unsigned rounds, Rng& rng);

struct PrimeWithFactor {
  BigInt p;  // prime, exactly `bits` bits, p = 1 + 2*r*x
  BigInt x;
};

// Random prime of the form p = 1 + 2*r*x with bitlen(p) == bits, x drawn
// uniformly from the range forcing that bit length.  Raises search_failure
// when the range is empty or the attempt budget (64*bits) runs out.
PrimeWithFactor gen_prime_with_factor(const BigInt& r, unsigned bits,
                                      Rng& rng);

}  // namespace sgmask
