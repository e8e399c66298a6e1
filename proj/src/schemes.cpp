#include "sgmask/schemes.hpp"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"

#include <utility>

namespace sgmask {

namespace {

void require_same_modulus(const BigInt& modulus, const GroupElement& u) {
  if (u.modulus() != modulus)
    throw Error(errc::invalid_element, "element modulus does not match key");
}

BigInt gcd_of(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

MaskKeyPair mask_keygen(const MaskParams& params) {
  validate_mask_params(params);

  MaskKeyPair kp;
  kp.pub.kind = params.kind();
  kp.pub.modulus = params.modulus();
  kp.pub.H = params.H.public_view();
  kp.pub.U = params.U.public_view();

  kp.sec.r = params.r;
  kp.sec.s = params.s;
  kp.sec.t = params.t;
  kp.sec.d = params.r * params.t;
  if (const auto* ring = std::get_if<RingParams>(&params.platform)) {
    kp.sec.p = ring->p;
    kp.sec.q = ring->q;
    kp.sec.phi = ring->phi;
  }
  return kp;
}

Ciphertext mask_encrypt_with_mask(const MaskPublicKey& pub,
                                  const GroupElement& u,
                                  const GroupElement& h) {
  require_same_modulus(pub.modulus, u);
  require_same_modulus(pub.modulus, h);
  return Ciphertext{h * u};
}

Ciphertext mask_encrypt(const MaskPublicKey& pub, const GroupElement& u,
                        Rng& rng) {
  const GroupElement h = random_subgroup_element(pub.H, rng);
  return mask_encrypt_with_mask(pub, u, h);
}

GroupElement mask_decrypt(const MaskKeyPair& keys, const Ciphertext& c) {
  require_same_modulus(keys.pub.modulus, c.value);
  return c.value.pow(keys.sec.d);
}

RsaMaskKeyPair rsa_mask_keygen(const MaskParams& params, const BigInt& e) {
  validate_mask_params(params);
  const auto* ring = std::get_if<RingParams>(&params.platform);
  if (!ring)
    throw Error(errc::invalid_argument,
                "the RSA-combined scheme needs a ring platform");
  if (e < 1) throw Error(errc::bad_public_exponent, "e must be >= 1");

  const BigInt& t_h = params.r;
  const BigInt& r_u = params.s;
  const BigInt shared = gcd_of(e, r_u);
  if (shared != 1)
    throw Error(errc::bad_public_exponent,
                "e shares factor " + shared.get_str() +
                    " with the message-subgroup exponent",
                shared);

  RsaMaskKeyPair kp;
  kp.pub.n = ring->n;
  kp.pub.H = params.H.public_view();
  kp.pub.U = params.U.public_view();
  kp.pub.e = e;

  kp.sec.p = ring->p;
  kp.sec.q = ring->q;
  kp.sec.phi = ring->phi;
  kp.sec.t_h = t_h;
  kp.sec.r_u = r_u;
  kp.sec.d1 = r_u == 1 ? BigInt(0) : mod_inv((t_h * e) % r_u, r_u);
  kp.sec.d = t_h * kp.sec.d1;
  return kp;
}

Ciphertext rsa_mask_encrypt_with_mask(const RsaMaskPublicKey& pub,
                                      const GroupElement& u,
                                      const GroupElement& h) {
  require_same_modulus(pub.n, u);
  require_same_modulus(pub.n, h);
  return Ciphertext{(h * u).pow(pub.e)};
}

Ciphertext rsa_mask_encrypt(const RsaMaskPublicKey& pub, const GroupElement& u,
                            Rng& rng) {
  const GroupElement h = random_subgroup_element(pub.H, rng);
  return rsa_mask_encrypt_with_mask(pub, u, h);
}

GroupElement rsa_mask_decrypt(const RsaMaskKeyPair& keys,
                              const Ciphertext& c) {
  require_same_modulus(keys.pub.n, c.value);
  return c.value.pow(keys.sec.d);
}

ElGamalSubgroupKeyPair elgamal_keygen(const BigInt& r, const BigInt& s,
                                      unsigned bits, Rng& rng) {
  if (r < 2 || s < 2)
    throw Error(errc::parameter_conflict,
                "r and s must both be >= 2 (the scheme is vacuous otherwise)");
  const BigInt shared = gcd_of(r, s);
  if (shared != 1)
    throw Error(errc::parameter_conflict,
                "r and s share factor " + shared.get_str(), shared);

  const auto r_factors = Factorization::trial_division(r, kSmoothBound);
  const auto s_factors = Factorization::trial_division(s, kSmoothBound);
  if (!r_factors || !s_factors)
    throw Error(errc::search_failure,
                "r and s must factor over primes < 2^20");

  // p = 1 + 2*r*s*m, i.e. p-1 = r*s*k with k = 2m even.
  SmoothPrime sp = gen_prime_with_smooth_cofactor(r * s, bits, rng);
  const BigInt k = 2 * sp.x;

  const Factorization pm1_factors = Factorization::of_prime(2) * *r_factors *
                                    *s_factors * sp.cofactor_factors;
  const GroupElement g =
      find_element_of_order(sp.p - 1, sp.p, pm1_factors, rng);

  const BigInt a = s * k;
  ElGamalSubgroupPublicKey pub{sp.p, g, g.pow(a), g.pow(r * k)};
  ElGamalSubgroupSecretKey sec{r, s, a, k, mod_inv(r % s, s)};
  return ElGamalSubgroupKeyPair{std::move(pub), std::move(sec)};
}

Ciphertext elgamal_encrypt_with_nonce(const ElGamalSubgroupPublicKey& pub,
                                      const GroupElement& u, const BigInt& l) {
  require_same_modulus(pub.p, u);
  if (l < 0) throw Error(errc::invalid_argument, "nonce must be >= 0");
  return Ciphertext{u * pub.y.pow(l)};
}

Ciphertext elgamal_encrypt(const ElGamalSubgroupPublicKey& pub,
                           const GroupElement& u, Rng& rng) {
  const BigInt l = rng.in_range(1, pub.p - 2);
  return elgamal_encrypt_with_nonce(pub, u, l);
}

GroupElement elgamal_decrypt(const ElGamalSubgroupKeyPair& keys,
                             const Ciphertext& c) {
  require_same_modulus(keys.pub.p, c.value);
  return c.value.pow(keys.sec.r).pow(keys.sec.t);
}

DhSession dh_setup(const BigInt& r, const BigInt& s, unsigned bits, Rng& rng) {
  if (r < 1 || s < 1)
    throw Error(errc::invalid_argument, "r and s must be >= 1");
  const BigInt shared = gcd_of(r, s);
  if (shared != 1)
    throw Error(errc::parameter_conflict,
                "r and s share factor " + shared.get_str(), shared);

  const auto r_factors = Factorization::trial_division(r, kSmoothBound);
  const auto s_factors = Factorization::trial_division(s, kSmoothBound);
  if (!r_factors || !s_factors)
    throw Error(errc::search_failure,
                "r and s must factor over primes < 2^20");

  // Blinding factors x and y soak up a third of the spare bits each; the
  // final cofactor z forces the exact prime size.
  const unsigned base_bits = bit_length(2 * r * s);
  const unsigned spare = bits > base_bits ? bits - base_bits : 0;
  const unsigned blind_bits = spare / 3;

  const unsigned long budget = 64UL * bits;
  for (unsigned long attempt = 0; attempt < budget; ++attempt) {
    BigInt x = 1, y = 1;
    Factorization x_factors, y_factors;
    if (blind_bits >= 2) {
      const BigInt lo = BigInt(1) << (blind_bits - 1);
      const BigInt hi = (BigInt(1) << blind_bits) - 1;
      SmoothSample xs = sample_smooth_in(lo, hi, rng);
      SmoothSample ys = sample_smooth_in(lo, hi, rng);
      x = std::move(xs.value);
      x_factors = std::move(xs.factors);
      y = std::move(ys.value);
      y_factors = std::move(ys.factors);
    }

    const BigInt r1 = r * x;
    const BigInt s1 = s * y;
    SmoothPrime sp;
    try {
      sp = gen_prime_with_smooth_cofactor(r1 * s1, bits, rng);
    } catch (const Error& e) {
      if (e.code() == errc::search_failure) continue;
      throw;
    }

    const Factorization pm1_factors = Factorization::of_prime(2) *
                                      *r_factors * *s_factors * x_factors *
                                      y_factors * sp.cofactor_factors;
    const GroupElement g =
        find_element_of_order(sp.p - 1, sp.p, pm1_factors, rng);

    // subgroups of exponent r and s, one generator per prime power
    auto build_side = [&](const BigInt& e, const Factorization& ef) {
      SubgroupSpec spec;
      spec.modulus = sp.p;
      std::vector<BigInt> orders;
      if (e == 1) {
        orders.push_back(1);
      } else {
        for (const auto& [prime, mult] : ef.entries()) {
          BigInt pk;
          mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), mult);
          orders.push_back(pk);
        }
      }
      for (const BigInt& o : orders) {
        const auto of = Factorization::trial_division(o, kSmoothBound);
        spec.generators.push_back(find_element_of_order(o, sp.p, *of, rng));
      }
      spec.secret_orders = std::move(orders);
      spec.secret_exponent = e;
      return spec;
    };

    DhSessionPublic pub{sp.p, g, r1, s1, build_side(r, *r_factors),
                        build_side(s, *s_factors)};
    return DhSession{std::move(pub), r, s};
  }
  throw Error(errc::search_failure, "session parameter search exhausted");
}

GroupElement dh_bob_message(const DhSession& session, const BigInt& b,
                            const GroupElement& u) {
  require_same_modulus(session.pub.p, u);
  if (b < 0) throw Error(errc::invalid_argument, "scalar must be >= 0");
  return u * session.pub.g.pow(b * session.r);
}

GroupElement dh_alice_message(const DhSession& session, const BigInt& a,
                              const GroupElement& h) {
  require_same_modulus(session.pub.p, h);
  if (a < 0) throw Error(errc::invalid_argument, "scalar must be >= 0");
  return h * session.pub.g.pow(a * session.s);
}

GroupElement dh_derive(const GroupElement& received, const BigInt& scalar,
                       const BigInt& prescribed) {
  if (scalar < 0 || prescribed < 1)
    throw Error(errc::invalid_argument, "bad derive exponents");
  return received.pow(prescribed * scalar);
}

}  // namespace sgmask
