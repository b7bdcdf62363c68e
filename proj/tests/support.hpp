#pragma once

// Test fixtures: a reference oracle with a ring view, and plaintext helpers
// going through the hidden decoder.

#include "bbring/bbgroup.hpp"
#include "bbring/black_box_ring.hpp"
#include "bbring/reference_oracle.hpp"

#include <optional>

namespace bbring::testing {

struct Session {
  ReferenceOracle oracle;
  BlackBoxRing ring;
  FactoredExponent fe;
  std::optional<BlackBoxGroup> group;

  Session(std::uint64_t q, std::uint64_t seed, bool with_identity = true)
      : oracle(FieldParams::for_order(q), seed), ring(oracle), fe(FactoredExponent::for_order(q)) {
    if (with_identity) {
      ring.identity(fe.value);
      group.emplace(ring, fe);
    }
  }

  const Field &field() const { return oracle.field(); }
  const MatrixRing &mats() const { return oracle.matrices(); }
  Mat2 plain(const Cryptoelement &x) const { return oracle.decode(x); }
  Mat2 plain(const GroupElement &x) const { return oracle.decode(x.handle()); }
  Cryptoelement enc(const Mat2 &m) { return oracle.encode(m); }
  Cryptoelement enc(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return oracle.encode(mats().from_integers(a, b, c, d));
  }
  GroupElement genc(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return GroupElement(enc(a, b, c, d));
  }
  bool is_scalar(const Cryptoelement &x) const { return mats().is_scalar(plain(x)); }
};

} // namespace bbring::testing
