// Desk-scale decision-problem oracles (order, exponent, membership,
// quadratic residuosity) and the two-message distinguishing game for the
// ElGamal variant.
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/groups.hpp"
#include "sgmask/rng.hpp"
#include "sgmask/schemes.hpp"

#include <cstdint>
#include <functional>

namespace sgmask {

// Default step/element cap for the exhaustive oracles.
inline constexpr std::size_t kOracleCap = 1u << 20;

// Minimal ord >= 1 with g^ord == 1, by successive multiplication.
// Raises too_large past cap steps.
BigInt brute_order(const GroupElement& g, std::size_t cap = kOracleCap);

// Exponent of H: lcm of element orders over the enumerated subgroup.
BigInt brute_exponent(const SubgroupSpec& H, std::size_t cap = kOracleCap);

// f in H, decided by enumerating H.
bool brute_membership(const GroupElement& f, const SubgroupSpec& H,
                      std::size_t cap = kOracleCap);

// Quadratic residuosity mod n = p*q via the Euler criterion on both prime
// parts.  Raises inconsistent_factorization when p*q != modulus or a
// factor is composite.
bool qr_by_euler(const GroupElement& f, const BigInt& p, const BigInt& q);

// The order-oracle reduction: f is a quadratic residue iff its order is
// odd.  Valid for n = p*q with p, q = 3 (mod 4); the caller guarantees
// that shape.
using OrderOracle = std::function<BigInt(const GroupElement&)>;
bool qr_by_order(const GroupElement& f, const OrderOracle& order_oracle);

struct IndGameResult {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  double advantage() const {
    const double rate = static_cast<double>(wins) / static_cast<double>(trials);
    return rate >= 0.5 ? rate - 0.5 : 0.5 - rate;
  }
};

// Guessing adversary: sees the public key, both candidate messages and the
// challenge ciphertext, returns 0 or 1.  Fresh coins are supplied per call;
// adversaries carry no state across trials.
using Adversary = std::function<int(const ElGamalSubgroupPublicKey& pub,
                                    const GroupElement& u0,
                                    const GroupElement& u1,
                                    const GroupElement& c, Rng& coins)>;

Adversary random_guess_adversary();

// Decides by testing u0^{-1}*c for membership in gp(y); exact whenever the
// enumeration fits under cap, hence it wins every trial at desk scale.
Adversary brute_membership_adversary(std::size_t cap = kOracleCap);

// Runs the two-message game: per trial, two distinct messages are drawn
// from the enumerated message subgroup gp(gb), one is encrypted under a
// fresh nonce, and the adversary guesses which.  trials == 0 raises
// invalid_argument.
IndGameResult ind_game(const ElGamalSubgroupPublicKey& pub,
                       const Adversary& adversary, std::uint64_t trials,
                       Rng& rng, std::size_t cap = kOracleCap);

}  // namespace sgmask
