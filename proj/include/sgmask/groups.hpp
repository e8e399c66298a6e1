// Multiplicative-group structure: elements, factorizations, subgroups given
// by generator lists, element orders and subgroup exponents.
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/numtheory.hpp"
#include "sgmask/rng.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace sgmask {

// Unit of Z_m^*: a residue in [1, m-1] coprime to m.  Construction reduces
// mod m and rejects anything outside the unit group.
class GroupElement {
 public:
  GroupElement(BigInt residue, BigInt modulus);

  const BigInt& residue() const { return residue_; }
  const BigInt& modulus() const { return modulus_; }

  bool is_identity() const { return residue_ == 1; }

  GroupElement operator*(const GroupElement& other) const;
  GroupElement pow(const BigInt& exp) const;
  GroupElement inverse() const;

  bool operator==(const GroupElement& other) const = default;
  std::strong_ordering operator<=>(const GroupElement& other) const;

 private:
  BigInt residue_;
  BigInt modulus_;
};

// Prime factorization as (prime, multiplicity) pairs, primes ascending.
class Factorization {
 public:
  Factorization() = default;  // value 1

  static Factorization of_prime(const BigInt& p, unsigned multiplicity = 1);

  // Complete factorization by trial division over primes < bound
  // (bound <= 2^20); nullopt when a larger factor remains.
  static std::optional<Factorization> trial_division(const BigInt& n,
                                                     std::uint32_t bound);

  void mul_prime(const BigInt& p, unsigned multiplicity = 1);
  Factorization operator*(const Factorization& other) const;

  BigInt value() const;
  const std::vector<std::pair<BigInt, unsigned>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

  // Checks the structural invariants: ascending primes, nonzero
  // multiplicities, every entry probable-prime at the given round count.
  bool certify(unsigned rounds, Rng& rng) const;

 private:
  std::vector<std::pair<BigInt, unsigned>> entries_;
};

// A subgroup of Z_m^* presented by generators.  The order/exponent fields
// are the owner's secrets; public serialization must strip them.
struct SubgroupSpec {
  BigInt modulus;
  std::vector<GroupElement> generators;
  std::optional<std::vector<BigInt>> secret_orders;  // one per generator
  std::optional<BigInt> secret_exponent;             // lcm of the orders

  static SubgroupSpec from_residues(const BigInt& modulus,
                                    const std::vector<BigInt>& residues);

  SubgroupSpec public_view() const;
};

// Checks the secret annotations against the generators: gen^order == 1 for
// each pair, exponent == lcm(orders).  Raises invalid_subgroup on mismatch.
void validate_subgroup(const SubgroupSpec& spec);

// Minimal ord >= 1 with g^ord == 1, computed by dividing prime factors out
// of the factored group order.  Raises inconsistent_factorization when
// g^N != 1 for the claimed group order N.
BigInt element_order(const GroupElement& g, const Factorization& group_order);

// Exponent e(H): lcm of the generator orders.
BigInt subgroup_exponent(const SubgroupSpec& H,
                         const Factorization& group_order);

// Element of F_p^* with exact order r, found by powering random field
// elements to (p-1)/r and certifying against the prime factors of r.
// Raises order_unavailable when r does not divide p-1, search_failure
// after 256 failed samples.
GroupElement find_element_of_order(const BigInt& r, const BigInt& p,
                                   const Factorization& r_factors, Rng& rng);

// Full element set of H (closure of the generators), ascending by residue.
// Raises too_large when the closure exceeds cap.
std::vector<GroupElement> enumerate_subgroup(const SubgroupSpec& H,
                                             std::size_t cap);

// Random element of H: product of generators raised to exponents drawn
// from [0, modulus * 2^64), near-uniform on each cyclic factor without
// knowledge of the secret orders.
GroupElement random_subgroup_element(const SubgroupSpec& H, Rng& rng);

}  // namespace sgmask
