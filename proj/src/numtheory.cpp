#include "sgmask/numtheory.hpp"

#include "sgmask/error.hpp"

namespace sgmask {

namespace {

std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
  std::vector<bool> composite(limit, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit;
         j += i)
      composite[static_cast<std::uint32_t>(j)] = true;
  }
  return primes;
}

// One Miller-Rabin round; m odd, m > 3, base in [2, m-2].
// d and s satisfy m - 1 == d * 2^s with d odd.
bool mr_round(const BigInt& m, const BigInt& base, const BigInt& d,
              unsigned long s) {
  BigInt x = mod_pow(base, d, m);
  const BigInt m1 = m - 1;
  if (x == 1 || x == m1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % m;
    if (x == m1) return true;
  }
  return false;
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = sieve_primes(kSmoothBound);
  return primes;
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m) {
  if (m < 2) throw Error(errc::invalid_modulus, "modulus must be >= 2");
  if (base < 0 || exp < 0)
    throw Error(errc::invalid_argument, "mod_pow arguments must be >= 0");
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return out;
}

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
  if (a == 0 && b == 0)
    throw Error(errc::undefined_gcd, "gcd(0, 0) is undefined");
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

BigInt mod_inv(const BigInt& a, const BigInt& m) {
  if (m < 2) throw Error(errc::invalid_modulus, "modulus must be >= 2");
  if (a < 0) throw Error(errc::invalid_argument, "mod_inv needs a >= 0");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1)
    throw Error(errc::not_invertible, "element not invertible, gcd " +
                    g.get_str(), g);
  BigInt out;
  mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return out;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a < 1 || b < 1)
    throw Error(errc::invalid_argument, "lcm arguments must be >= 1");
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt crt_pair(const BigInt& a1, const BigInt& m1, const BigInt& a2,
                const BigInt& m2) {
  if (m1 < 1 || m2 < 1)
    throw Error(errc::invalid_argument, "crt moduli must be >= 1");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  if (g != 1) throw Error(errc::crt_moduli, "crt moduli are not coprime", g);
  const BigInt n = m1 * m2;
  if (n == 1) return 0;
  // x = a1 + m1 * ((a2 - a1) * m1^{-1} mod m2)
  BigInt r1 = a1 % m1;
  if (m2 == 1) return r1;
  const BigInt inv = mod_inv(m1 % m2, m2);
  BigInt delta = (a2 - r1) % m2;
  if (delta < 0) delta += m2;
  BigInt x = r1 + m1 * ((delta * inv) % m2);
  return x % n;
}

bool is_probable_prime(const BigInt& m, unsigned rounds, Rng& rng) {
  if (rounds < 1) throw Error(errc::invalid_argument, "rounds must be >= 1");
  if (m < 2) return false;
  if (m == 2 || m == 3) return true;
  if (mpz_even_p(m.get_mpz_t())) return false;

  for (std::uint32_t p : small_primes()) {
    if (p >= 1000) break;
    if (m == p) return true;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
  }

  BigInt d = m - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  if (bit_length(m) <= 64) {
    // deterministic below 2^64 with the first twelve prime bases
    static const unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31,
                                     37};
    for (unsigned b : bases) {
      if (!mr_round(m, b, d, s)) return false;
    }
    return true;
  }

  const BigInt hi = m - 2;
  for (unsigned i = 0; i < rounds; ++i) {
    const BigInt base = rng.in_range(2, hi);
    if (!mr_round(m, base, d, s)) return false;
  }
  return true;
}

PrimeWithFactor gen_prime_with_factor(const BigInt& r, unsigned bits,
                                      Rng& rng) {
  if (r < 1) throw Error(errc::invalid_argument, "r must be >= 1");
  if (bits < 2) throw Error(errc::search_failure, "bit size too small");

  const BigInt step = 2 * r;
  BigInt xlo, xhi;
  {
    BigInt lo = BigInt(1) << (bits - 1);
    BigInt hi = (BigInt(1) << bits) - 2;
    mpz_cdiv_q(xlo.get_mpz_t(), lo.get_mpz_t(), step.get_mpz_t());
    mpz_fdiv_q(xhi.get_mpz_t(), hi.get_mpz_t(), step.get_mpz_t());
  }
  if (xlo < 1) xlo = 1;
  if (xlo > xhi)
    throw Error(errc::search_failure, "no candidate of the requested size");

  const unsigned long budget = 64UL * bits;
  for (unsigned long attempt = 0; attempt < budget; ++attempt) {
    const BigInt x = rng.in_range(xlo, xhi);
    const BigInt p = 1 + step * x;
    if (is_probable_prime(p, 64, rng)) return {p, x};
  }
  throw Error(errc::search_failure, "prime search budget exhausted");
}

}  // namespace sgmask
