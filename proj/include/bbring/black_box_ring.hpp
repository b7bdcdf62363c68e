#pragma once

#include "bbring/oracle.hpp"

#include <cstdint>
#include <optional>

namespace bbring {

/// Ring operations derived from the oracle axioms alone: zero, identity,
/// powers, commutators and the invertibility test.
///
/// Holds a non-owning reference to the oracle and caches zero and identity.
class BlackBoxRing {
public:
  static constexpr unsigned kIdentityProbes = 3;
  static constexpr unsigned kDefaultIdentityBudget = 64;

  explicit BlackBoxRing(RingOracle &oracle) : oracle_(&oracle) {}

  RingOracle &oracle() const noexcept { return *oracle_; }

  Cryptoelement random() { return oracle_->random(); }
  Cryptoelement add(const Cryptoelement &x, const Cryptoelement &y) { return oracle_->add(x, y); }
  Cryptoelement neg(const Cryptoelement &x) { return oracle_->negate(x); }
  Cryptoelement sub(const Cryptoelement &x, const Cryptoelement &y) { return add(x, neg(y)); }
  Cryptoelement mul(const Cryptoelement &x, const Cryptoelement &y) {
    return oracle_->multiply(x, y);
  }
  bool eq(const Cryptoelement &x, const Cryptoelement &y) { return oracle_->equal(x, y); }

  /// r - r for a random r; cached.
  const Cryptoelement &zero();

  /// Samples r until r^exponent acts as a two-sided identity on kIdentityProbes
  /// fresh random elements; cached. `exponent` must be q(q^2 - 1).
  /// Throws RecoveryError after `budget` rejected candidates.
  const Cryptoelement &identity(std::uint64_t exponent, unsigned budget = kDefaultIdentityBudget);
  bool has_identity() const noexcept { return identity_.has_value(); }
  /// Throws UsageError if identity() has not been built yet.
  const Cryptoelement &identity() const;
  std::uint64_t exponent() const;

  /// x^n by square-and-multiply. n = 0 needs the identity.
  Cryptoelement pow(const Cryptoelement &x, std::uint64_t n);
  /// n x by double-and-add. n = 0 gives zero().
  Cryptoelement times(std::uint64_t n, const Cryptoelement &x);

  Cryptoelement commutator(const Cryptoelement &x, const Cryptoelement &y) {
    return sub(mul(x, y), mul(y, x));
  }
  /// [x,y]^2, always central in M_2.
  Cryptoelement commutator_square(const Cryptoelement &x, const Cryptoelement &y) {
    const Cryptoelement c = commutator(x, y);
    return mul(c, c);
  }
  bool commutes(const Cryptoelement &x, const Cryptoelement &y) {
    return eq(mul(x, y), mul(y, x));
  }

  /// x^E = e. Powers of singular matrices stay singular, so this is exact.
  bool is_invertible(const Cryptoelement &x);

private:
  RingOracle *oracle_;
  std::optional<Cryptoelement> zero_;
  std::optional<Cryptoelement> identity_;
  std::uint64_t exponent_ = 0;
};

} // namespace bbring
