// Error codes and the exception type shared by the whole toolkit.
#pragma once

#include "sgmask/bigint.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace sgmask {

enum class errc {
  invalid_modulus,
  invalid_argument,
  undefined_gcd,
  not_invertible,
  crt_moduli,
  search_failure,
  order_unavailable,
  inconsistent_factorization,
  invalid_element,
  invalid_subgroup,
  too_large,
  parameter_conflict,
  bad_public_exponent,
  out_of_range,
  not_in_subgroup,
  data_format,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(errc code, const std::string& message, BigInt detail)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  errc code() const noexcept { return code_; }

  // Extra integer attached to some errors, e.g. the offending gcd of a
  // failed inversion.
  const std::optional<BigInt>& detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::optional<BigInt> detail_;
};

}  // namespace sgmask
