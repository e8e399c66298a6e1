// Deterministic splittable pseudorandom stream.
#pragma once

#include "sgmask/bigint.hpp"

#include <cstdint>

namespace sgmask {

// SplitMix64 generator.  Identical seeds yield identical streams on every
// platform; split() hands out an independent child stream so concurrent
// consumers never share state.  All randomness in the toolkit flows through
// an explicitly passed Rng.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  bool coin();

  // Independent child stream; advances this stream.
  Rng split();

  // Uniform in [0, bound); bound >= 1.
  BigInt below(const BigInt& bound);

  // Uniform in [lo, hi] inclusive; lo <= hi.
  BigInt in_range(const BigInt& lo, const BigInt& hi);

 private:
  Rng(std::uint64_t state, std::uint64_t gamma);

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace sgmask
