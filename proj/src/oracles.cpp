#include "sgmask/oracles.hpp"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"

namespace sgmask {

BigInt brute_order(const GroupElement& g, std::size_t cap) {
  BigInt acc = g.residue();
  BigInt ord = 1;
  while (acc != 1) {
    if (ord >= cap)
      throw Error(errc::too_large, "order exceeds brute-force cap");
    acc = (acc * g.residue()) % g.modulus();
    ord += 1;
  }
  return ord;
}

BigInt brute_exponent(const SubgroupSpec& H, std::size_t cap) {
  BigInt e = 1;
  for (const GroupElement& el : enumerate_subgroup(H, cap))
    e = lcm(e, brute_order(el, cap));
  return e;
}

bool brute_membership(const GroupElement& f, const SubgroupSpec& H,
                      std::size_t cap) {
  if (f.modulus() != H.modulus)
    throw Error(errc::invalid_element, "element modulus does not match H");
  for (const GroupElement& el : enumerate_subgroup(H, cap))
    if (el.residue() == f.residue()) return true;
  return false;
}

bool qr_by_euler(const GroupElement& f, const BigInt& p, const BigInt& q) {
  if (p * q != f.modulus())
    throw Error(errc::inconsistent_factorization, "p*q != modulus");
  Rng probe(0);
  if (!is_probable_prime(p, 64, probe) || !is_probable_prime(q, 64, probe))
    throw Error(errc::inconsistent_factorization, "factor is composite");
  const bool qr_p = mod_pow(f.residue() % p, (p - 1) / 2, p) == 1;
  const bool qr_q = mod_pow(f.residue() % q, (q - 1) / 2, q) == 1;
  return qr_p && qr_q;
}

bool qr_by_order(const GroupElement& f, const OrderOracle& order_oracle) {
  return mpz_odd_p(order_oracle(f).get_mpz_t()) != 0;
}

Adversary random_guess_adversary() {
  return [](const ElGamalSubgroupPublicKey&, const GroupElement&,
            const GroupElement&, const GroupElement&, Rng& coins) {
    return coins.coin() ? 1 : 0;
  };
}

Adversary brute_membership_adversary(std::size_t cap) {
  return [cap](const ElGamalSubgroupPublicKey& pub, const GroupElement& u0,
               const GroupElement&, const GroupElement& c, Rng&) {
    SubgroupSpec mask_group;
    mask_group.modulus = pub.p;
    mask_group.generators.push_back(pub.y);
    const GroupElement candidate = u0.inverse() * c;
    return brute_membership(candidate, mask_group, cap) ? 0 : 1;
  };
}

IndGameResult ind_game(const ElGamalSubgroupPublicKey& pub,
                       const Adversary& adversary, std::uint64_t trials,
                       Rng& rng, std::size_t cap) {
  if (trials == 0) throw Error(errc::invalid_argument, "trials must be >= 1");

  SubgroupSpec message_group;
  message_group.modulus = pub.p;
  message_group.generators.push_back(pub.gb);
  const std::vector<GroupElement> messages =
      enumerate_subgroup(message_group, cap);
  if (messages.size() < 2)
    throw Error(errc::invalid_argument,
                "message subgroup too small for a two-message game");

  IndGameResult result;
  result.trials = trials;
  const BigInt count(static_cast<unsigned long>(messages.size()));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::size_t i0 =
        static_cast<std::size_t>(rng.below(count).get_ui());
    std::size_t i1 = i0;
    while (i1 == i0)
      i1 = static_cast<std::size_t>(rng.below(count).get_ui());
    const GroupElement& u0 = messages[i0];
    const GroupElement& u1 = messages[i1];

    const int challenge = rng.coin() ? 1 : 0;
    const Ciphertext c =
        elgamal_encrypt(pub, challenge == 0 ? u0 : u1, rng);

    Rng coins = rng.split();
    const int guess = adversary(pub, u0, u1, c.value, coins);
    if (guess == challenge) ++result.wins;
  }
  return result;
}

}  // namespace sgmask
