#include "bbring/black_box_ring.hpp"

#include "bbring/errors.hpp"

#include <bit>

namespace bbring {

const Cryptoelement &BlackBoxRing::zero() {
  if (!zero_) {
    const Cryptoelement r = random();
    zero_ = sub(r, r);
  }
  return *zero_;
}

const Cryptoelement &BlackBoxRing::identity(std::uint64_t exponent, unsigned budget) {
  if (identity_) {
    if (exponent != exponent_) throw UsageError("identity already built for another exponent");
    return *identity_;
  }
  if (exponent == 0) throw UsageError("identity exponent must be positive");
  for (unsigned attempt = 0; attempt < budget; ++attempt) {
    const Cryptoelement candidate = pow(random(), exponent);
    bool acts_as_identity = true;
    for (unsigned i = 0; i < kIdentityProbes && acts_as_identity; ++i) {
      const Cryptoelement s = random();
      acts_as_identity = eq(mul(candidate, s), s) && eq(mul(s, candidate), s);
    }
    if (acts_as_identity) {
      identity_ = candidate;
      exponent_ = exponent;
      return *identity_;
    }
  }
  throw RecoveryError("identity", "no invertible element found in " + std::to_string(budget) +
                                      " random samples");
}

const Cryptoelement &BlackBoxRing::identity() const {
  if (!identity_) throw UsageError("identity has not been constructed");
  return *identity_;
}

std::uint64_t BlackBoxRing::exponent() const {
  if (!identity_) throw UsageError("identity has not been constructed");
  return exponent_;
}

Cryptoelement BlackBoxRing::pow(const Cryptoelement &x, std::uint64_t n) {
  if (n == 0) return identity();
  // Left-to-right square-and-multiply.
  Cryptoelement r = x;
  for (int bit = std::bit_width(n) - 2; bit >= 0; --bit) {
    r = mul(r, r);
    if ((n >> bit) & 1) r = mul(r, x);
  }
  return r;
}

Cryptoelement BlackBoxRing::times(std::uint64_t n, const Cryptoelement &x) {
  if (n == 0) return zero();
  Cryptoelement r = x;
  for (int bit = std::bit_width(n) - 2; bit >= 0; --bit) {
    r = add(r, r);
    if ((n >> bit) & 1) r = add(r, x);
  }
  return r;
}

bool BlackBoxRing::is_invertible(const Cryptoelement &x) {
  return eq(pow(x, exponent()), identity());
}

} // namespace bbring
