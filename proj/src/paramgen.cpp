#include "sgmask/paramgen.hpp"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"

#include <optional>
#include <utility>

namespace sgmask {

namespace {

// Factorization of a user-prescribed subgroup order; orders must be
// 2^20-smooth or the construction cannot certify element orders.
Factorization factor_order(const BigInt& order) {
  if (order < 1)
    throw Error(errc::invalid_argument, "subgroup orders must be >= 1");
  auto f = Factorization::trial_division(order, kSmoothBound);
  if (!f)
    throw Error(errc::search_failure,
                "order " + order.get_str() + " has a prime factor >= 2^20");
  return *f;
}

// One attempt at a smooth integer in [lo, hi]: multiply random primes,
// each capped so the product cannot overshoot.
std::optional<SmoothSample> try_smooth_in(const BigInt& lo, const BigInt& hi,
                                          Rng& rng) {
  SmoothSample out;
  out.value = 1;
  while (out.value < lo) {
    BigInt cap = hi / out.value;
    if (cap < 2) return std::nullopt;
    if (cap > kSmoothBound - 1) cap = kSmoothBound - 1;
    bool found = false;
    for (unsigned tries = 0; tries < 64; ++tries) {
      const BigInt c = rng.in_range(2, cap);
      if (is_probable_prime(c, 64, rng)) {
        out.value *= c;
        out.factors.mul_prime(c);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  if (out.value > hi) return std::nullopt;
  return out;
}

BigInt lcm_of(const std::vector<BigInt>& values) {
  BigInt acc = 1;
  for (const BigInt& v : values) acc = lcm(acc, v);
  return acc;
}

BigInt product_of(const std::vector<BigInt>& values) {
  BigInt acc = 1;
  for (const BigInt& v : values) {
    if (v < 1)
      throw Error(errc::invalid_argument, "subgroup orders must be >= 1");
    acc *= v;
  }
  return acc;
}

// t = r^{-1} (mod s); by convention 0 when s == 1 (everything is 1 mod 1).
BigInt mask_inverse(const BigInt& r, const BigInt& s) {
  if (s == 1) return 0;
  return mod_inv(r % s, s);
}

void require_coprime_sides(const BigInt& r, const BigInt& s) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
  if (g != 1)
    throw Error(errc::parameter_conflict,
                "mask and message exponents share factor " + g.get_str(), g);
}

}  // namespace

void validate_mask_params(const MaskParams& params) {
  const BigInt& m = params.modulus();
  if (const auto* ring = std::get_if<RingParams>(&params.platform)) {
    if (ring->n != ring->p * ring->q || ring->p == ring->q)
      throw Error(errc::parameter_conflict, "ring modulus is not p*q");
    if (ring->phi != (ring->p - 1) * (ring->q - 1))
      throw Error(errc::parameter_conflict, "phi(n) mismatch");
  }
  require_coprime_sides(params.r, params.s);
  if (params.s == 1) {
    if (params.t != 0)
      throw Error(errc::parameter_conflict, "t must be 0 when s == 1");
  } else if ((params.r * params.t) % params.s != 1) {
    throw Error(errc::parameter_conflict, "r*t != 1 (mod s)");
  }
  if (params.H.modulus != m || params.U.modulus != m)
    throw Error(errc::invalid_subgroup, "subgroup modulus mismatch");
  for (const GroupElement& h : params.H.generators)
    if (!h.pow(params.r).is_identity())
      throw Error(errc::invalid_subgroup, "mask generator^r != 1");
  for (const GroupElement& u : params.U.generators)
    if (!u.pow(params.s).is_identity())
      throw Error(errc::invalid_subgroup, "message generator^s != 1");
  validate_subgroup(params.H);
  validate_subgroup(params.U);
}

SmoothSample sample_smooth_in(const BigInt& lo, const BigInt& hi, Rng& rng) {
  if (lo < 1 || lo > hi)
    throw Error(errc::search_failure, "empty smooth-sample range");
  for (unsigned attempt = 0; attempt < 4096; ++attempt) {
    auto sample = try_smooth_in(lo, hi, rng);
    if (sample) return std::move(*sample);
  }
  throw Error(errc::search_failure, "smooth sample search exhausted");
}

SmoothPrime gen_prime_with_smooth_cofactor(const BigInt& r, unsigned bits,
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
    auto sample = try_smooth_in(xlo, xhi, rng);
    if (!sample) continue;
    const BigInt p = 1 + step * sample->value;
    if (is_probable_prime(p, 64, rng))
      return {p, sample->value, std::move(sample->factors)};
  }
  throw Error(errc::search_failure, "prime search budget exhausted");
}

FieldBuild build_field_with_orders(const std::vector<BigInt>& orders,
                                   unsigned bits, Rng& rng) {
  std::vector<Factorization> order_factors;
  order_factors.reserve(orders.size());
  for (const BigInt& o : orders) order_factors.push_back(factor_order(o));

  const BigInt product = product_of(orders);
  SmoothPrime sp = gen_prime_with_smooth_cofactor(product, bits, rng);

  Factorization pm1 = Factorization::of_prime(2);
  for (const Factorization& f : order_factors) pm1 = pm1 * f;
  pm1 = pm1 * sp.cofactor_factors;

  FieldBuild out;
  out.field = FieldParams{sp.p, std::move(pm1)};
  out.elements.reserve(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i)
    out.elements.push_back(
        find_element_of_order(orders[i], sp.p, order_factors[i], rng));
  return out;
}

SubgroupBuild build_subgroup_of_exponent(const BigInt& e, unsigned bits,
                                         Rng& rng) {
  const Factorization ef = factor_order(e);

  // one generator per prime-power factor of e; lcm of those orders is e
  std::vector<BigInt> orders;
  if (e == 1) {
    orders.push_back(1);
  } else {
    for (const auto& [p, k] : ef.entries()) {
      BigInt pk;
      mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
      orders.push_back(pk);
    }
  }

  FieldBuild fb = build_field_with_orders(orders, bits, rng);

  SubgroupBuild out;
  out.subgroup.modulus = fb.field.p;
  out.subgroup.generators = std::move(fb.elements);
  out.subgroup.secret_orders = std::move(orders);
  out.subgroup.secret_exponent = e;
  out.field = std::move(fb.field);
  return out;
}

RingMaskBuild build_ring_with_orders(const std::vector<BigInt>& r_list,
                                     const std::vector<BigInt>& s_list,
                                     unsigned bits, Rng& rng) {
  if (r_list.empty() || s_list.empty())
    throw Error(errc::invalid_argument, "order lists must be nonempty");
  const BigInt r = lcm_of(r_list);
  const BigInt s = lcm_of(s_list);
  require_coprime_sides(r, s);
  if (bits < 4) throw Error(errc::search_failure, "ring size too small");

  std::vector<Factorization> r_factors, s_factors;
  for (const BigInt& o : r_list) r_factors.push_back(factor_order(o));
  for (const BigInt& o : s_list) s_factors.push_back(factor_order(o));

  const unsigned pbits = bits / 2;
  const unsigned qbits = bits - pbits;

  SmoothPrime sp = gen_prime_with_smooth_cofactor(product_of(r_list), pbits,
                                                  rng);
  SmoothPrime sq = gen_prime_with_smooth_cofactor(product_of(s_list), qbits,
                                                  rng);
  for (unsigned tries = 0; sq.p == sp.p; ++tries) {
    if (tries >= 64)
      throw Error(errc::search_failure, "could not find distinct primes");
    sp = gen_prime_with_smooth_cofactor(product_of(r_list), pbits, rng);
    sq = gen_prime_with_smooth_cofactor(product_of(s_list), qbits, rng);
  }

  RingParams ring;
  ring.p = sp.p;
  ring.q = sq.p;
  ring.n = ring.p * ring.q;
  ring.phi = (ring.p - 1) * (ring.q - 1);
  ring.pm1_factors = Factorization::of_prime(2) * sp.cofactor_factors;
  for (const Factorization& f : r_factors)
    ring.pm1_factors = ring.pm1_factors * f;
  ring.qm1_factors = Factorization::of_prime(2) * sq.cofactor_factors;
  for (const Factorization& f : s_factors)
    ring.qm1_factors = ring.qm1_factors * f;

  // H carries the r-side orders and is trivial mod q; U the reverse.  The
  // CRT lift preserves the exact orders.
  SubgroupSpec H, U;
  H.modulus = U.modulus = ring.n;
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    const GroupElement a =
        find_element_of_order(r_list[i], ring.p, r_factors[i], rng);
    H.generators.emplace_back(crt_pair(a.residue(), ring.p, 1, ring.q),
                              ring.n);
  }
  for (std::size_t j = 0; j < s_list.size(); ++j) {
    const GroupElement b =
        find_element_of_order(s_list[j], ring.q, s_factors[j], rng);
    U.generators.emplace_back(crt_pair(1, ring.p, b.residue(), ring.q),
                              ring.n);
  }
  H.secret_orders = r_list;
  H.secret_exponent = r;
  U.secret_orders = s_list;
  U.secret_exponent = s;

  RingMaskBuild out;
  out.params = MaskParams{ring, std::move(H), std::move(U), r, s,
                          mask_inverse(r, s)};
  out.ring = std::move(ring);
  return out;
}

FieldMaskBuild build_field_mask_params(const std::vector<BigInt>& r_list,
                                       const std::vector<BigInt>& s_list,
                                       unsigned bits, Rng& rng) {
  if (r_list.empty() || s_list.empty())
    throw Error(errc::invalid_argument, "order lists must be nonempty");
  const BigInt r = lcm_of(r_list);
  const BigInt s = lcm_of(s_list);
  require_coprime_sides(r, s);

  std::vector<Factorization> r_factors, s_factors;
  for (const BigInt& o : r_list) r_factors.push_back(factor_order(o));
  for (const BigInt& o : s_list) s_factors.push_back(factor_order(o));

  SmoothPrime sp = gen_prime_with_smooth_cofactor(r * s, bits, rng);

  FieldParams field;
  field.p = sp.p;
  field.pm1_factors = Factorization::of_prime(2) * factor_order(r) *
                      factor_order(s) * sp.cofactor_factors;

  SubgroupSpec H, U;
  H.modulus = U.modulus = field.p;
  for (std::size_t i = 0; i < r_list.size(); ++i)
    H.generators.push_back(
        find_element_of_order(r_list[i], field.p, r_factors[i], rng));
  for (std::size_t j = 0; j < s_list.size(); ++j)
    U.generators.push_back(
        find_element_of_order(s_list[j], field.p, s_factors[j], rng));
  H.secret_orders = r_list;
  H.secret_exponent = r;
  U.secret_orders = s_list;
  U.secret_exponent = s;

  FieldMaskBuild out;
  out.params = MaskParams{field, std::move(H), std::move(U), r, s,
                          mask_inverse(r, s)};
  out.field = std::move(field);
  return out;
}

}  // namespace sgmask
