// The four cryptosystems: the basic subgroup-mask scheme over fields and
// rings, its RSA-combined form, the header-free ElGamal variant and the
// masked Diffie-Hellman exchange.
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/groups.hpp"
#include "sgmask/paramgen.hpp"
#include "sgmask/rng.hpp"

#include <optional>

namespace sgmask {

// All schemes here are header-free: a ciphertext is one group element.
struct Ciphertext {
  GroupElement value;
};

// ---------------------------------------------------------------------------
// Basic mask scheme (field and ring versions share the code path).
// Encrypt: c = h*u with h random in H.  Decrypt: u = c^(r*t).

struct MaskPublicKey {
  PlatformKind kind;
  BigInt modulus;
  SubgroupSpec H;  // public view: generators only
  SubgroupSpec U;
};

struct MaskSecretKey {
  BigInt r;  // exponent of H
  BigInt s;  // exponent of U
  BigInt t;  // r^{-1} (mod s); 0 when s == 1
  BigInt d;  // decryption exponent r*t
  // ring platform only; absent over a prime field
  std::optional<BigInt> p, q, phi;
};

struct MaskKeyPair {
  MaskPublicKey pub;
  MaskSecretKey sec;
};

MaskKeyPair mask_keygen(const MaskParams& params);

// Deterministic core used by tests and audits; h must lie in H.
Ciphertext mask_encrypt_with_mask(const MaskPublicKey& pub,
                                  const GroupElement& u,
                                  const GroupElement& h);
Ciphertext mask_encrypt(const MaskPublicKey& pub, const GroupElement& u,
                        Rng& rng);
GroupElement mask_decrypt(const MaskKeyPair& keys, const Ciphertext& c);

// ---------------------------------------------------------------------------
// RSA-combined scheme over Z_n.  Encrypt: c = (h*u)^e.  Decrypt: u = c^d
// with d = t_h*d1 and (t_h*e)*d1 = 1 (mod r_u).

struct RsaMaskPublicKey {
  BigInt n;
  SubgroupSpec H;
  SubgroupSpec U;
  BigInt e;
};

struct RsaMaskSecretKey {
  BigInt p, q, phi;
  BigInt t_h;  // exponent of H
  BigInt r_u;  // exponent of U, coprime to both t_h and e
  BigInt d1;   // (t_h*e)^{-1} (mod r_u); 0 when r_u == 1
  BigInt d;    // t_h*d1
};

struct RsaMaskKeyPair {
  RsaMaskPublicKey pub;
  RsaMaskSecretKey sec;
};

// params must sit on a ring platform; gcd(e, r_u) != 1 raises
// bad_public_exponent.
RsaMaskKeyPair rsa_mask_keygen(const MaskParams& params, const BigInt& e);

Ciphertext rsa_mask_encrypt_with_mask(const RsaMaskPublicKey& pub,
                                      const GroupElement& u,
                                      const GroupElement& h);
Ciphertext rsa_mask_encrypt(const RsaMaskPublicKey& pub, const GroupElement& u,
                            Rng& rng);
GroupElement rsa_mask_decrypt(const RsaMaskKeyPair& keys, const Ciphertext& c);

// ---------------------------------------------------------------------------
// Header-free ElGamal variant.  p-1 = r*s*k, a = s*k, b = r*k; messages
// live in gp(g^b), masks in gp(y) = gp(g^a).  Encrypt: c = u*y^l.
// Decrypt: u = (c^r)^t.

struct ElGamalSubgroupPublicKey {
  BigInt p;
  GroupElement g;   // generator of F_p^*
  GroupElement y;   // g^a
  GroupElement gb;  // g^b, generates the message subgroup of order s
};

struct ElGamalSubgroupSecretKey {
  BigInt r;  // order of gp(y)
  BigInt s;  // order of gp(g^b)
  BigInt a;  // s*k
  BigInt k;  // even cofactor, p-1 = r*s*k
  BigInt t;  // r^{-1} (mod s)
};

struct ElGamalSubgroupKeyPair {
  ElGamalSubgroupPublicKey pub;
  ElGamalSubgroupSecretKey sec;
};

// r, s >= 2 and coprime (degenerate r or s of 1 makes the scheme vacuous
// and raises parameter_conflict).
ElGamalSubgroupKeyPair elgamal_keygen(const BigInt& r, const BigInt& s,
                                      unsigned bits, Rng& rng);

Ciphertext elgamal_encrypt_with_nonce(const ElGamalSubgroupPublicKey& pub,
                                      const GroupElement& u, const BigInt& l);
Ciphertext elgamal_encrypt(const ElGamalSubgroupPublicKey& pub,
                           const GroupElement& u, Rng& rng);
GroupElement elgamal_decrypt(const ElGamalSubgroupKeyPair& keys,
                             const Ciphertext& c);

// ---------------------------------------------------------------------------
// Masked Diffie-Hellman.  p = 1 + 2*r1*s1*z with r1 = r*x and s1 = s*y
// published; H has exponent r, U exponent s.  Bob sends u*g^(b*r), Alice
// sends h*g^(a*s); both derive g^(a*b*r*s).

struct DhSessionPublic {
  BigInt p;
  GroupElement g;  // generator of F_p^*
  BigInt r1;       // r*x, blinds Bob's r
  BigInt s1;       // s*y, blinds Alice's s
  SubgroupSpec H;  // exponent r (Alice samples her mask here)
  SubgroupSpec U;  // exponent s (Bob samples his mask here)
};

struct DhSession {
  DhSessionPublic pub;
  BigInt r;  // Bob's private exponent, divides r1
  BigInt s;  // Alice's private exponent, divides s1
};

// gcd(r, s) != 1 raises parameter_conflict.
DhSession dh_setup(const BigInt& r, const BigInt& s, unsigned bits, Rng& rng);

// Wire messages; masks come from the counterparty's subgroup.  Each side
// needs its own private exponent from the session, so these take the full
// session rather than the public part.
GroupElement dh_bob_message(const DhSession& session, const BigInt& b,
                            const GroupElement& u);  // u*g^(b*r)
GroupElement dh_alice_message(const DhSession& session, const BigInt& a,
                              const GroupElement& h);  // h*g^(a*s)

// received^(prescribed*scalar); both sides land on g^(a*b*r*s).
GroupElement dh_derive(const GroupElement& received, const BigInt& scalar,
                       const BigInt& prescribed);

}  // namespace sgmask
