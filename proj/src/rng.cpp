#include "sgmask/rng.hpp"

#include "sgmask/error.hpp"

#include <bit>

namespace sgmask {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return z ^ (z >> 33);
}

std::uint64_t mix_gamma(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  z |= 1ULL;  // gammas must be odd
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed), gamma_(kGoldenGamma) {}

Rng::Rng(std::uint64_t state, std::uint64_t gamma)
    : state_(state), gamma_(gamma) {}

std::uint64_t Rng::next_u64() {
  state_ += gamma_;
  return mix64(state_);
}

bool Rng::coin() { return (next_u64() & 1u) != 0; }

Rng Rng::split() {
  const std::uint64_t s = next_u64();
  const std::uint64_t g = next_u64();
  return Rng(s, mix_gamma(g));
}

BigInt Rng::below(const BigInt& bound) {
  if (bound < 1) throw Error(errc::invalid_argument, "rng bound must be >= 1");
  if (bound == 1) return 0;
  const unsigned bits = bit_length(bound);
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    BigInt v = 0;
    for (unsigned i = 0; i < words; ++i) {
      const std::uint64_t w = next_u64();
      v <<= 64;
      v |= BigInt(static_cast<unsigned long>(w >> 32)) << 32;
      v |= static_cast<unsigned long>(w & 0xffffffffULL);
    }
    // keep only `bits` low bits, then reject out-of-range draws
    mpz_tdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
    if (v < bound) return v;
  }
}

BigInt Rng::in_range(const BigInt& lo, const BigInt& hi) {
  if (lo > hi) throw Error(errc::invalid_argument, "rng range is empty");
  return lo + below(hi - lo + 1);
}

}  // namespace sgmask
