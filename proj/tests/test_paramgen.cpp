#include "doctest.h"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"
#include "sgmask/paramgen.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

using namespace sgmask;

TEST_CASE("sample_smooth_in lands in range with a true factorization") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const BigInt lo = BigInt(1) << 40;
    const BigInt hi = BigInt(1) << 41;
    const SmoothSample s = sample_smooth_in(lo, hi, rng);
    CHECK(s.value >= lo);
    CHECK(s.value <= hi);
    CHECK(s.factors.value() == s.value);
    for (const auto& [p, k] : s.factors.entries()) CHECK(p < kSmoothBound);
    CHECK(s.factors.certify(64, rng));
  }
  CHECK(sample_smooth_in(1, 1, rng).value == 1);
  CHECK_THROWS_AS(sample_smooth_in(5, 4, rng), Error);
}

TEST_CASE("gen_prime_with_smooth_cofactor output shape") {
  Rng rng(5);
  const std::vector<std::pair<unsigned long, unsigned>> cases = {
      {15, 5}, {15, 24}, {3, 40}, {1, 32}, {24, 16}};
  for (const auto& [r, bits] : cases) {
    const SmoothPrime sp = gen_prime_with_smooth_cofactor(r, bits, rng);
    CHECK(bit_length(sp.p) == bits);
    CHECK(sp.p == 1 + 2 * BigInt(r) * sp.x);
    CHECK(sp.cofactor_factors.value() == sp.x);
    CHECK(is_probable_prime(sp.p, 64, rng));
  }
}

TEST_CASE("build_field_with_orders frozen examples") {
  {
    Rng rng(7);
    const FieldBuild fb = build_field_with_orders({3, 5}, 5, rng);
    CHECK(fb.field.p == 31);  // the only 5-bit prime = 1 (mod 30)
    CHECK(fb.field.pm1_factors.value() == 30);
    REQUIRE(fb.elements.size() == 2);
    const std::set<BigInt> order3 = {5, 25};
    const std::set<BigInt> order5 = {2, 4, 8, 16};
    CHECK(order3.count(fb.elements[0].residue()) == 1);
    CHECK(order5.count(fb.elements[1].residue()) == 1);
  }
  {
    Rng rng(8);
    const FieldBuild fb = build_field_with_orders({1}, 4, rng);
    REQUIRE(fb.elements.size() == 1);
    CHECK(fb.elements[0].is_identity());
  }
  {
    // orders need not be coprime for mere construction
    Rng rng(9);
    const FieldBuild fb = build_field_with_orders({4, 6}, 7, rng);
    CHECK(fb.field.p == 97);  // forced: x = 2 is the only 7-bit window value
    CHECK(fb.elements[0].pow(4).is_identity());
    CHECK_FALSE(fb.elements[0].pow(2).is_identity());
    CHECK(fb.elements[1].pow(6).is_identity());
    CHECK_FALSE(fb.elements[1].pow(3).is_identity());
    CHECK_FALSE(fb.elements[1].pow(2).is_identity());
  }
}

TEST_CASE("build_field_with_orders knows the full factorization of p-1") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const FieldBuild fb = build_field_with_orders({6, 35}, 28, rng);
    CHECK(fb.field.pm1_factors.value() == fb.field.p - 1);
    CHECK(fb.field.pm1_factors.certify(64, rng));
    CHECK((fb.field.p - 1) % (2 * 6 * 35) == 0);
  }
}

TEST_CASE("build_subgroup_of_exponent uses prime-power generator orders") {
  {
    Rng rng(13);
    const SubgroupBuild sb = build_subgroup_of_exponent(15, 5, rng);
    CHECK(sb.field.p == 31);
    REQUIRE(sb.subgroup.secret_orders.has_value());
    CHECK(*sb.subgroup.secret_orders == std::vector<BigInt>{3, 5});
    CHECK(*sb.subgroup.secret_exponent == 15);
    CHECK_NOTHROW(validate_subgroup(sb.subgroup));
  }
  {
    Rng rng(14);
    const SubgroupBuild sb = build_subgroup_of_exponent(1, 4, rng);
    REQUIRE(sb.subgroup.generators.size() == 1);
    CHECK(sb.subgroup.generators[0].is_identity());
    CHECK(*sb.subgroup.secret_exponent == 1);
  }
  {
    Rng rng(15);
    const SubgroupBuild sb = build_subgroup_of_exponent(12, 10, rng);
    CHECK(*sb.subgroup.secret_orders == std::vector<BigInt>{4, 3});
    CHECK(*sb.subgroup.secret_exponent == 12);
    CHECK_NOTHROW(validate_subgroup(sb.subgroup));
  }
}

TEST_CASE("build_ring_with_orders frozen toy ring") {
  Rng rng(17);
  const RingMaskBuild rb = build_ring_with_orders({3}, {5}, 7, rng);
  CHECK(rb.ring.p == 7);   // only 3-bit prime = 1 (mod 6)
  CHECK(rb.ring.q == 11);  // only 4-bit prime = 1 (mod 10)
  CHECK(rb.ring.n == 77);
  CHECK(rb.ring.phi == 60);
  CHECK(rb.params.r == 3);
  CHECK(rb.params.s == 5);
  CHECK(rb.params.t == 2);

  const std::set<BigInt> h_candidates = {23, 67};
  const std::set<BigInt> u_candidates = {15, 36, 64, 71};
  REQUIRE(rb.params.H.generators.size() == 1);
  REQUIRE(rb.params.U.generators.size() == 1);
  CHECK(h_candidates.count(rb.params.H.generators[0].residue()) == 1);
  CHECK(u_candidates.count(rb.params.U.generators[0].residue()) == 1);
  CHECK_NOTHROW(validate_mask_params(rb.params));
}

TEST_CASE("build_ring_with_orders with trivial sides") {
  Rng rng(27);
  const RingMaskBuild rb = build_ring_with_orders({1}, {1}, 12, rng);
  CHECK(rb.params.r == 1);
  CHECK(rb.params.s == 1);
  CHECK(rb.params.t == 0);
  CHECK(rb.params.H.generators[0].is_identity());
  CHECK(rb.params.U.generators[0].is_identity());
  CHECK(rb.ring.p != rb.ring.q);
  CHECK_NOTHROW(validate_mask_params(rb.params));
}

TEST_CASE("build_ring_with_orders parameter errors") {
  Rng rng(18);
  CHECK_THROWS_AS(build_ring_with_orders({2}, {2}, 16, rng), Error);
  try {
    build_ring_with_orders({2}, {4}, 16, rng);
    FAIL("gcd(2, 4) = 2");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parameter_conflict);
  }
  CHECK_THROWS_AS(build_ring_with_orders({}, {5}, 16, rng), Error);
  CHECK_THROWS_AS(build_ring_with_orders({3}, {}, 16, rng), Error);
}

TEST_CASE("ring construction pins subgroups to one prime side") {
  Rng rng(19);
  const RingMaskBuild rb = build_ring_with_orders({3, 4}, {5, 7}, 28, rng);
  CHECK(rb.params.r == 12);
  CHECK(rb.params.s == 35);
  CHECK((rb.params.r * rb.params.t) % rb.params.s == 1);
  // H generators are 1 mod q, U generators are 1 mod p
  for (const auto& h : rb.params.H.generators) {
    CHECK(h.residue() % rb.ring.q == 1);
    CHECK(h.pow(rb.params.r).is_identity());
  }
  for (const auto& u : rb.params.U.generators) {
    CHECK(u.residue() % rb.ring.p == 1);
    CHECK(u.pow(rb.params.s).is_identity());
  }
  CHECK(rb.ring.pm1_factors.value() == rb.ring.p - 1);
  CHECK(rb.ring.qm1_factors.value() == rb.ring.q - 1);
  CHECK_NOTHROW(validate_mask_params(rb.params));
}

TEST_CASE("build_field_mask_params frozen toy field") {
  Rng rng(20);
  const FieldMaskBuild fb = build_field_mask_params({3}, {5}, 5, rng);
  CHECK(fb.field.p == 31);
  CHECK(fb.params.r == 3);
  CHECK(fb.params.s == 5);
  CHECK(fb.params.t == 2);
  const std::set<BigInt> order3 = {5, 25};
  const std::set<BigInt> order5 = {2, 4, 8, 16};
  CHECK(order3.count(fb.params.H.generators[0].residue()) == 1);
  CHECK(order5.count(fb.params.U.generators[0].residue()) == 1);
  CHECK_NOTHROW(validate_mask_params(fb.params));
}

TEST_CASE("build_field_mask_params trivial and conflicting orders") {
  {
    Rng rng(21);
    const FieldMaskBuild fb = build_field_mask_params({1}, {1}, 4, rng);
    CHECK(fb.params.r == 1);
    CHECK(fb.params.s == 1);
    CHECK(fb.params.t == 0);
    CHECK(fb.params.H.generators[0].is_identity());
    CHECK(fb.params.U.generators[0].is_identity());
    CHECK_NOTHROW(validate_mask_params(fb.params));
  }
  {
    Rng rng(22);
    CHECK_THROWS_AS(build_field_mask_params({3}, {3}, 8, rng), Error);
  }
}

TEST_CASE("generated field params have the advertised shape") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const FieldMaskBuild fb = build_field_mask_params({3, 5}, {7}, 24, rng);
    CHECK(bit_length(fb.field.p) == 24);
    CHECK((fb.field.p - 1) % (2 * 15 * 7) == 0);
    CHECK(is_probable_prime(fb.field.p, 64, rng));
    CHECK(fb.field.pm1_factors.value() == fb.field.p - 1);
  }
}

TEST_CASE("validate_mask_params rejects corrupted parameter sets") {
  Rng rng(24);
  FieldMaskBuild fb = build_field_mask_params({3}, {5}, 5, rng);

  MaskParams bad_t = fb.params;
  bad_t.t = 3;
  CHECK_THROWS_AS(validate_mask_params(bad_t), Error);

  MaskParams swapped = fb.params;
  std::swap(swapped.H, swapped.U);
  CHECK_THROWS_AS(validate_mask_params(swapped), Error);

  MaskParams shared = fb.params;
  shared.s = 6;  // gcd(3, 6) = 3
  CHECK_THROWS_AS(validate_mask_params(shared), Error);
}

TEST_CASE("mask-message products cover the whole group when r*s = p-1") {
  // split p-1 into the 2-power part and the odd part; either side may be
  // the mask.  Every unit must then arise as h*u exactly once.
  Rng rng(26);
  for (unsigned long p : {31ul, 61ul, 211ul, 1009ul, 2003ul}) {
    const auto pm1 = *Factorization::trial_division(p - 1, kSmoothBound);
    BigInt even_part = 1, odd_part = 1;
    for (const auto& [prime, k] : pm1.entries()) {
      BigInt pk;
      mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), k);
      (prime == 2 ? even_part : odd_part) *= pk;
    }
    for (const auto& [r, s] : {std::pair{even_part, odd_part},
                               std::pair{odd_part, even_part}}) {
      const GroupElement h_gen = find_element_of_order(
          r, p, *Factorization::trial_division(r, kSmoothBound), rng);
      const GroupElement u_gen = find_element_of_order(
          s, p, *Factorization::trial_division(s, kSmoothBound), rng);
      SubgroupSpec H = SubgroupSpec::from_residues(p, {h_gen.residue()});
      SubgroupSpec U = SubgroupSpec::from_residues(p, {u_gen.residue()});

      const auto masks = enumerate_subgroup(H, 1 << 12);
      const auto messages = enumerate_subgroup(U, 1 << 12);
      CHECK(BigInt(masks.size()) * BigInt(messages.size()) == p - 1);

      // coprime orders force a trivial intersection
      std::set<BigInt> mask_set;
      for (const auto& h : masks) mask_set.insert(h.residue());
      unsigned shared = 0;
      for (const auto& u : messages) shared += mask_set.count(u.residue());
      CHECK(shared == 1);  // just the identity

      std::map<BigInt, unsigned> hits;
      for (const auto& h : masks)
        for (const auto& u : messages) hits[(h * u).residue()] += 1;
      CHECK(hits.size() == p - 1);
      bool all_once = true;
      for (const auto& [residue, count] : hits) all_once &= count == 1;
      CHECK(all_once);
    }
  }
}

TEST_CASE("public serialization strips every secret field") {
  Rng rng(25);
  const FieldMaskBuild fb = build_field_mask_params({3}, {5}, 12, rng);
  const SubgroupSpec h_pub = fb.params.H.public_view();
  const SubgroupSpec u_pub = fb.params.U.public_view();
  CHECK_FALSE(h_pub.secret_orders.has_value());
  CHECK_FALSE(h_pub.secret_exponent.has_value());
  CHECK_FALSE(u_pub.secret_orders.has_value());
  CHECK_FALSE(u_pub.secret_exponent.has_value());
  CHECK(h_pub.generators == fb.params.H.generators);
}
