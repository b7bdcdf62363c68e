#include "bbring/errors.hpp"
#include "bbring/recovery.hpp"

namespace bbring {

Cryptoelement scalar_random(BlackBoxRing &ring) {
  const Cryptoelement x = ring.random();
  const Cryptoelement y = ring.random();
  return ring.commutator_square(x, y);
}

BlackBoxField::BlackBoxField(BlackBoxRing &ring, std::uint64_t q)
    : ring_(&ring), q_(q), zero_(ring.zero()), one_(ring.identity()) {}

Cryptoelement BlackBoxField::random() const { return scalar_random(*ring_); }

Cryptoelement BlackBoxField::random_unit() const {
  for (unsigned i = 0; i < kUnitResampleBudget; ++i) {
    Cryptoelement z = random();
    if (!is_zero(z)) return z;
  }
  throw RecoveryError("scalar_field", "no nonzero scalar in " +
                                          std::to_string(kUnitResampleBudget) + " draws");
}

Cryptoelement BlackBoxField::inv(const Cryptoelement &a) const {
  if (is_zero(a)) throw DomainError("inverse of zero in the black box field");
  return pow(a, q_ - 2);
}

BlackBoxField build_black_box_field(BlackBoxRing &ring, std::uint64_t q) {
  if (!ring.has_identity()) throw UsageError("the field of scalars needs the ring identity");
  return BlackBoxField(ring, q);
}

} // namespace bbring
