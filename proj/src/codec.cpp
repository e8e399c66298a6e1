#include "sgmask/codec.hpp"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"

#include <map>

namespace sgmask {

namespace {

const GroupElement& primary_generator(const SubgroupSpec& U) {
  if (U.generators.empty())
    throw Error(errc::invalid_subgroup, "subgroup has no generators");
  return U.generators.front();
}

}  // namespace

EncodedMessage encode_exponent(const BigInt& m, const SubgroupSpec& U,
                               const std::optional<BigInt>& order) {
  if (m < 0) throw Error(errc::out_of_range, "message must be >= 0");
  const GroupElement& u1 = primary_generator(U);
  const std::optional<BigInt>& s = order ? order : U.secret_exponent;
  if (s && m >= *s)
    throw Error(errc::out_of_range,
                "message " + m.get_str() + " is outside [0, s)");
  return EncodedMessage{CodecMode::exponent, m, u1.pow(m)};
}

BigInt decode_exponent(const GroupElement& el, const SubgroupSpec& U,
                       const BigInt& order, std::uint64_t max_order) {
  if (order < 1) throw Error(errc::invalid_argument, "order must be >= 1");
  if (order > max_order)
    throw Error(errc::too_large, "subgroup order exceeds the BSGS bound");
  const GroupElement& u1 = primary_generator(U);
  if (el.modulus() != u1.modulus())
    throw Error(errc::invalid_element, "element modulus does not match U");

  // baby steps: u1^j for j in [0, stride)
  BigInt stride_big;
  mpz_sqrt(stride_big.get_mpz_t(), order.get_mpz_t());
  stride_big += 1;
  const unsigned long stride = stride_big.get_ui();

  std::map<BigInt, unsigned long> table;
  {
    BigInt acc = 1;
    for (unsigned long j = 0; j < stride; ++j) {
      table.emplace(acc, j);
      acc = (acc * u1.residue()) % u1.modulus();
    }
  }

  // giant steps: el * (u1^-stride)^i
  const GroupElement giant = u1.pow(stride).inverse();
  BigInt gamma = el.residue();
  for (unsigned long i = 0; i <= stride; ++i) {
    auto hit = table.find(gamma);
    if (hit != table.end()) {
      BigInt m = BigInt(i) * stride + hit->second;
      if (m < order) return m;
    }
    gamma = (gamma * giant.residue()) % u1.modulus();
  }
  throw Error(errc::not_in_subgroup, "element is not a power of u1");
}

EncodedMessage kem_sample(const SubgroupSpec& U, Rng& rng) {
  return EncodedMessage{CodecMode::kem, std::nullopt,
                        random_subgroup_element(U, rng)};
}

}  // namespace sgmask
