// Construction of prime fields and two-prime modular rings whose unit
// groups contain subgroups of prescribed orders and exponent, with the
// public/secret parameter split used by every scheme.
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/groups.hpp"
#include "sgmask/rng.hpp"

#include <variant>
#include <vector>

namespace sgmask {

struct FieldParams {
  BigInt p;                    // public prime modulus
  Factorization pm1_factors;   // secret factorization of p-1
};

struct RingParams {
  BigInt n;  // public modulus, n = p*q
  BigInt p;  // secret prime factors
  BigInt q;
  BigInt phi;  // (p-1)*(q-1)
  Factorization pm1_factors;
  Factorization qm1_factors;
};

enum class PlatformKind { field, ring };

// Complete key-owner view of a mask/message subgroup pair over a field or
// ring platform.  Everything except the modulus and the generator lists is
// secret.
struct MaskParams {
  std::variant<FieldParams, RingParams> platform;
  SubgroupSpec H;  // mask subgroup, exponent r
  SubgroupSpec U;  // message subgroup, exponent s
  BigInt r;        // exponent of H
  BigInt s;        // exponent of U, coprime to r
  BigInt t;        // r^{-1} (mod s); 0 when s == 1

  PlatformKind kind() const {
    return std::holds_alternative<FieldParams>(platform) ? PlatformKind::field
                                                         : PlatformKind::ring;
  }
  const BigInt& modulus() const {
    if (const auto* f = std::get_if<FieldParams>(&platform)) return f->p;
    return std::get<RingParams>(platform).n;
  }
};

// Checks every MaskParams invariant constructively: platform consistency,
// gcd(r, s) == 1, r*t = 1 (mod s), every H generator^r == 1 and U
// generator^s == 1.  Raises parameter_conflict / invalid_subgroup.
void validate_mask_params(const MaskParams& params);

struct SmoothSample {
  BigInt value;
  Factorization factors;
};

// Random 2^20-smooth integer in [lo, hi], built as a product of random
// primes so its factorization comes for free.  Raises search_failure when
// the range is empty or cannot be hit.
SmoothSample sample_smooth_in(const BigInt& lo, const BigInt& hi, Rng& rng);

struct SmoothPrime {
  BigInt p;                         // prime, p = 1 + 2*r*x
  BigInt x;                         // 2^20-smooth cofactor
  Factorization cofactor_factors;   // factorization of x
};

// Prime p = 1 + 2*r*x of exactly `bits` bits where x is built from primes
// below 2^20, so the full factorization of p-1 is known to the caller.
SmoothPrime gen_prime_with_smooth_cofactor(const BigInt& r, unsigned bits,
                                           Rng& rng);

struct FieldBuild {
  FieldParams field;
  std::vector<GroupElement> elements;  // elements[i] has exact order orders[i]
};

// Field F_p, p = 1 + 2*(prod orders)*x, together with one element of each
// requested order.  Orders must be >= 1 and factor over primes < 2^20.
FieldBuild build_field_with_orders(const std::vector<BigInt>& orders,
                                   unsigned bits, Rng& rng);

struct SubgroupBuild {
  FieldParams field;
  SubgroupSpec subgroup;  // secret_exponent == e
};

// Subgroup of F_p^* of exponent exactly e, generated by elements whose
// orders are the prime-power factors of e.
SubgroupBuild build_subgroup_of_exponent(const BigInt& e, unsigned bits,
                                         Rng& rng);

struct RingMaskBuild {
  RingParams ring;
  MaskParams params;
};

// Ring Z_n, n = p*q, with H generators of orders r_list lifted to be 1 mod
// q and U generators of orders s_list lifted to be 1 mod p.  `bits` is the
// target size of n; p gets floor(bits/2) bits and q the rest.
// lcm(r_list) and lcm(s_list) must be coprime (parameter_conflict).
RingMaskBuild build_ring_with_orders(const std::vector<BigInt>& r_list,
                                     const std::vector<BigInt>& s_list,
                                     unsigned bits, Rng& rng);

struct FieldMaskBuild {
  FieldParams field;
  MaskParams params;
};

// Field analogue: single prime p = 1 (mod 2*lcm(r_list)*lcm(s_list)) hosting
// both subgroups.
FieldMaskBuild build_field_mask_params(const std::vector<BigInt>& r_list,
                                       const std::vector<BigInt>& s_list,
                                       unsigned bits, Rng& rng);

}  // namespace sgmask
