// Mapping between application payloads and message-subgroup elements:
// exponent mode (integer m -> u1^m, inverted by baby-step giant-step) and
// kem mode (transport a random subgroup element).
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/groups.hpp"
#include "sgmask/rng.hpp"

#include <optional>

namespace sgmask {

enum class CodecMode { exponent, kem };

struct EncodedMessage {
  CodecMode mode;
  std::optional<BigInt> payload;  // exponent mode only
  GroupElement element;
};

// Largest subgroup order for which exponent-mode decoding stays feasible
// (the BSGS table holds ~sqrt(order) entries).
inline constexpr std::uint64_t kMaxBsgsOrder = 1ULL << 40;

// m -> u1^m for the designated (first) generator u1 of U.  When the cyclic
// order s is known - passed explicitly or present as U.secret_exponent -
// m >= s raises out_of_range; encryptors holding only the public view
// cannot check and the power is computed as-is.
EncodedMessage encode_exponent(const BigInt& m, const SubgroupSpec& U,
                               const std::optional<BigInt>& order =
                                   std::nullopt);

// Discrete log of el to base u1 inside gp(u1) of order s, via baby-step
// giant-step in O(sqrt(s)).  Raises not_in_subgroup when el lies outside
// gp(u1) and too_large when s exceeds the feasibility bound.
BigInt decode_exponent(const GroupElement& el, const SubgroupSpec& U,
                       const BigInt& order,
                       std::uint64_t max_order = kMaxBsgsOrder);

// Random element of U; its canonical byte encoding is the session secret.
EncodedMessage kem_sample(const SubgroupSpec& U, Rng& rng);

}  // namespace sgmask
