#include "sgmask/groups.hpp"

#include "sgmask/error.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sgmask {

GroupElement::GroupElement(BigInt residue, BigInt modulus)
    : residue_(std::move(residue)), modulus_(std::move(modulus)) {
  if (modulus_ < 2)
    throw Error(errc::invalid_element, "group modulus must be >= 2");
  if (residue_ < 0)
    throw Error(errc::invalid_element, "residue must be >= 0");
  residue_ %= modulus_;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
  if (residue_ == 0 || g != 1)
    throw Error(errc::invalid_element,
                "residue " + residue_.get_str() + " is not a unit mod " +
                    modulus_.get_str(),
                g);
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (modulus_ != other.modulus_)
    throw Error(errc::invalid_element, "mismatched moduli in product");
  return GroupElement((residue_ * other.residue_) % modulus_, modulus_);
}

GroupElement GroupElement::pow(const BigInt& exp) const {
  return GroupElement(mod_pow(residue_, exp, modulus_), modulus_);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(mod_inv(residue_, modulus_), modulus_);
}

std::strong_ordering GroupElement::operator<=>(
    const GroupElement& other) const {
  const int m = cmp(modulus_, other.modulus_);
  if (m != 0) return m < 0 ? std::strong_ordering::less
                           : std::strong_ordering::greater;
  const int r = cmp(residue_, other.residue_);
  if (r < 0) return std::strong_ordering::less;
  if (r > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Factorization Factorization::of_prime(const BigInt& p, unsigned multiplicity) {
  Factorization f;
  f.mul_prime(p, multiplicity);
  return f;
}

std::optional<Factorization> Factorization::trial_division(
    const BigInt& n, std::uint32_t bound) {
  if (n < 1) throw Error(errc::invalid_argument, "cannot factor n < 1");
  if (bound > kSmoothBound)
    throw Error(errc::invalid_argument, "trial division bound above 2^20");
  Factorization f;
  BigInt rest = n;
  for (std::uint32_t p : small_primes()) {
    if (p >= bound) break;
    if (rest == 1) break;
    // remaining cofactor with no divisor <= its square root is prime
    if (BigInt(p) * p > rest) break;
    unsigned mult = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++mult;
    }
    if (mult > 0) f.mul_prime(p, mult);
  }
  if (rest == 1) return f;
  if (rest < bound) {
    f.mul_prime(rest, 1);
    return f;
  }
  return std::nullopt;
}

void Factorization::mul_prime(const BigInt& p, unsigned multiplicity) {
  if (p < 2) throw Error(errc::invalid_argument, "factor must be >= 2");
  if (multiplicity == 0) return;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), p,
      [](const auto& entry, const BigInt& v) { return entry.first < v; });
  if (it != entries_.end() && it->first == p)
    it->second += multiplicity;
  else
    entries_.insert(it, {p, multiplicity});
}

Factorization Factorization::operator*(const Factorization& other) const {
  Factorization out = *this;
  for (const auto& [p, k] : other.entries_) out.mul_prime(p, k);
  return out;
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& [p, k] : entries_) {
    BigInt pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    v *= pk;
  }
  return v;
}

bool Factorization::certify(unsigned rounds, Rng& rng) const {
  BigInt prev = 1;
  for (const auto& [p, k] : entries_) {
    if (k == 0 || p <= prev) return false;
    if (!is_probable_prime(p, rounds, rng)) return false;
    prev = p;
  }
  return true;
}

SubgroupSpec SubgroupSpec::from_residues(const BigInt& modulus,
                                         const std::vector<BigInt>& residues) {
  SubgroupSpec spec;
  spec.modulus = modulus;
  spec.generators.reserve(residues.size());
  for (const BigInt& r : residues) spec.generators.emplace_back(r, modulus);
  return spec;
}

SubgroupSpec SubgroupSpec::public_view() const {
  SubgroupSpec out;
  out.modulus = modulus;
  out.generators = generators;
  return out;
}

void validate_subgroup(const SubgroupSpec& spec) {
  for (const GroupElement& g : spec.generators)
    if (g.modulus() != spec.modulus)
      throw Error(errc::invalid_subgroup, "generator modulus mismatch");
  if (spec.secret_orders) {
    if (spec.secret_orders->size() != spec.generators.size())
      throw Error(errc::invalid_subgroup, "one order per generator required");
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      const BigInt& ord = (*spec.secret_orders)[i];
      if (ord < 1 || !spec.generators[i].pow(ord).is_identity())
        throw Error(errc::invalid_subgroup,
                    "generator does not satisfy its claimed order");
    }
  }
  if (spec.secret_exponent) {
    if (!spec.secret_orders)
      throw Error(errc::invalid_subgroup, "exponent requires orders");
    BigInt e = 1;
    for (const BigInt& ord : *spec.secret_orders) e = lcm(e, ord);
    if (e != *spec.secret_exponent)
      throw Error(errc::invalid_subgroup,
                  "exponent is not the lcm of the generator orders");
  }
}

BigInt element_order(const GroupElement& g, const Factorization& group_order) {
  const BigInt n = group_order.value();
  if (n < 1 || !g.pow(n).is_identity())
    throw Error(errc::inconsistent_factorization,
                "element^N != 1 for the claimed group order");
  BigInt ord = n;
  for (const auto& [p, k] : group_order.entries()) {
    for (unsigned i = 0; i < k; ++i) {
      if (!mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t())) break;
      BigInt reduced = ord / p;
      if (!g.pow(reduced).is_identity()) break;
      ord = reduced;
    }
  }
  return ord;
}

BigInt subgroup_exponent(const SubgroupSpec& H,
                         const Factorization& group_order) {
  BigInt e = 1;
  for (const GroupElement& g : H.generators)
    e = lcm(e, element_order(g, group_order));
  return e;
}

GroupElement find_element_of_order(const BigInt& r, const BigInt& p,
                                   const Factorization& r_factors, Rng& rng) {
  if (p < 3) throw Error(errc::invalid_argument, "p must be >= 3");
  if (r_factors.value() != r)
    throw Error(errc::inconsistent_factorization,
                "factorization does not match r");
  if (r == 1) return GroupElement(1, p);
  const BigInt pm1 = p - 1;
  if (!mpz_divisible_p(pm1.get_mpz_t(), r.get_mpz_t()))
    throw Error(errc::order_unavailable,
                "requested order does not divide p-1");

  const BigInt cofactor = pm1 / r;
  BigInt hi = p - 2;
  if (hi < 2) hi = 2;
  for (unsigned attempt = 0; attempt < 256; ++attempt) {
    const BigInt w = rng.in_range(2, hi);
    const BigInt g = mod_pow(w, cofactor, p);
    if (g == 1) continue;
    bool exact = true;
    for (const auto& [ell, k] : r_factors.entries()) {
      (void)k;
      if (mod_pow(g, r / ell, p) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) return GroupElement(g, p);
  }
  throw Error(errc::search_failure, "no element of the requested order found");
}

std::vector<GroupElement> enumerate_subgroup(const SubgroupSpec& H,
                                             std::size_t cap) {
  std::set<BigInt> seen;
  std::deque<BigInt> frontier;
  seen.insert(1);
  frontier.push_back(1);
  while (!frontier.empty()) {
    const BigInt v = frontier.front();
    frontier.pop_front();
    for (const GroupElement& g : H.generators) {
      BigInt w = (v * g.residue()) % H.modulus;
      if (seen.insert(w).second) {
        if (seen.size() > cap)
          throw Error(errc::too_large, "subgroup exceeds enumeration cap");
        frontier.push_back(w);
      }
    }
  }
  std::vector<GroupElement> out;
  out.reserve(seen.size());
  for (const BigInt& v : seen) out.emplace_back(v, H.modulus);
  return out;
}

GroupElement random_subgroup_element(const SubgroupSpec& H, Rng& rng) {
  if (H.generators.empty())
    throw Error(errc::invalid_subgroup, "subgroup has no generators");
  const BigInt bound = H.modulus << 64;
  GroupElement acc(1, H.modulus);
  for (const GroupElement& g : H.generators)
    acc = acc * g.pow(rng.below(bound));
  return acc;
}

}  // namespace sgmask
