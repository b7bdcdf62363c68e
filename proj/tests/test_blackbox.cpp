#include "bbring/errors.hpp"
#include "bbring/exhaustive.hpp"

#include "support.hpp"

#include "doctest.h"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <vector>

using namespace bbring;
using bbring::testing::Session;

TEST_CASE("cryptoelement layout") {
  for (auto q : {3ULL, 9ULL, 81ULL, 1009ULL, 65519ULL}) {
    CAPTURE(q);
    Session s(q, 1, false);
    const std::size_t expected = 4 * s.field().serialized_size() + ReferenceOracle::kNonceBytes;
    CHECK(s.oracle.string_length() == expected);
    const Cryptoelement x = s.ring.random();
    CHECK(x.size() == expected);
    CHECK(x.session() == s.oracle.session_id());
  }
}

TEST_CASE("random elements") {
  SUBCASE("equal plaintexts under distinct nonces compare equal") {
    Session s(5, 2, false);
    const Mat2 m = s.mats().from_integers(1, 2, 3, 4);
    const Cryptoelement a = s.enc(m), b = s.enc(m);
    CHECK_FALSE(a.same_string(b));
    CHECK(s.ring.eq(a, b));
  }
  SUBCASE("decoded plaintexts are uniform over M_2(F_5)") {
    Session s(5, 3, false);
    constexpr std::uint64_t n = 100000;
    std::vector<double> counts(625, 0.0);
    const Field &f = s.field();
    for (std::uint64_t i = 0; i < n; ++i) {
      const Mat2 m = s.plain(s.ring.random());
      std::uint64_t code = 0;
      for (const auto &e : m.entries) code = code * 5 + f.index_of(e);
      counts[code] += 1.0;
    }
    const double expected = static_cast<double>(n) / 625.0;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    const boost::math::chi_squared dist(624);
    const double p_value = boost::math::cdf(boost::math::complement(dist, chi2));
    CAPTURE(chi2);
    CHECK(p_value > 0.001);
  }
  SUBCASE("invertibility rate at q = 5") {
    Session s(5, 4);
    const Fraction exact = brute_force_invertibility_rate(s.field());
    int hits = 0;
    for (int i = 0; i < 10000; ++i) hits += s.ring.is_invertible(s.ring.random()) ? 1 : 0;
    CHECK(std::abs(hits / 10000.0 - exact.value()) < 0.02);
    CHECK(exact.value() == doctest::Approx(0.768));
  }
  SUBCASE("invertibility rate at q = 7") {
    Session s(7, 5);
    int hits = 0;
    for (int i = 0; i < 10000; ++i) hits += s.ring.is_invertible(s.ring.random()) ? 1 : 0;
    CHECK(std::abs(hits / 10000.0 - (1.0 - 1.0 / 7) * (1.0 - 1.0 / 49)) < 0.02);
  }
}

TEST_CASE("ring operations") {
  Session s(7, 6);
  BlackBoxRing &r = s.ring;
  const Cryptoelement x = r.random();
  CHECK(r.eq(r.add(x, r.neg(x)), r.zero()));
  CHECK(r.eq(r.mul(x, r.zero()), r.zero()));
  CHECK(r.eq(r.mul(r.zero(), x), r.zero()));
  CHECK(r.eq(r.add(x, r.zero()), x));
  bool distributive = true;
  for (int i = 0; i < 100; ++i) {
    const Cryptoelement a = r.random(), b = r.random(), c = r.random();
    distributive = distributive && r.eq(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
  }
  CHECK(distributive);
}

TEST_CASE("equality") {
  Session s(3, 7);
  BlackBoxRing &r = s.ring;
  const Cryptoelement x = r.random();
  CHECK(r.eq(x, x));
  const Cryptoelement copy = r.add(x, r.zero());
  CHECK_FALSE(copy.same_string(x));
  CHECK(r.eq(copy, x));
  CHECK_FALSE(r.eq(r.add(x, r.identity()), x));
}

TEST_CASE("zero and identity") {
  Session s(5, 8, false);
  BlackBoxRing &r = s.ring;
  const Cryptoelement &z = r.zero();
  CHECK(s.plain(z) == s.mats().zero());
  CHECK(&r.zero() == &z);
  const Cryptoelement rr = r.random();
  CHECK(r.eq(z, r.add(rr, r.neg(rr))));

  CHECK_FALSE(r.has_identity());
  CHECK_THROWS_AS(r.identity(), UsageError);
  CHECK_THROWS_AS(r.pow(rr, 0), UsageError);
  const Cryptoelement &e = r.identity(gl2_exponent(s.field().params()));
  CHECK(s.plain(e) == s.mats().identity());
  CHECK(r.exponent() == 120);
  bool identity_law = true;
  for (int i = 0; i < 100; ++i) {
    const Cryptoelement y = r.random();
    identity_law = identity_law && r.eq(r.mul(e, y), y) && r.eq(r.mul(y, e), y);
  }
  CHECK(identity_law);
  CHECK(r.eq(r.pow(e, 7), e));
  CHECK_THROWS_AS(r.identity(24), UsageError);
}

TEST_CASE("identity search gives up after its budget") {
  // Exponent 1 makes every candidate the sample itself, which is almost never the identity.
  Session s(101, 9, false);
  CHECK_THROWS_AS(s.ring.identity(1, 4), RecoveryError);
}

TEST_CASE("powers") {
  Session s(5, 10);
  BlackBoxRing &r = s.ring;
  const Cryptoelement x = r.random();
  CHECK(r.eq(r.pow(x, 1), x));
  CHECK(r.eq(r.pow(x, 2), r.mul(x, x)));
  CHECK(r.eq(r.pow(x, 0), r.identity()));
  CHECK(r.eq(r.pow(x, 13), r.mul(r.pow(x, 6), r.pow(x, 7))));
  const Cryptoelement d = s.enc(2, 0, 0, 1);
  CHECK(r.eq(r.pow(d, 4), r.identity()));
  CHECK_FALSE(r.eq(r.pow(d, 2), r.identity()));
  CHECK(r.eq(r.times(5, r.identity()), r.zero()));
  CHECK(r.eq(r.times(3, x), r.add(x, r.add(x, x))));
}

TEST_CASE("commutator squares") {
  Session s(11, 11);
  BlackBoxRing &r = s.ring;
  const Cryptoelement x = r.random();
  CHECK(r.eq(r.commutator_square(x, x), r.zero()));
  const Cryptoelement a = s.enc(0, 1, 0, 0), b = s.enc(0, 0, 1, 0);
  CHECK(r.eq(r.commutator_square(a, b), r.identity()));
  const Cryptoelement c = r.commutator_square(r.random(), r.random());
  bool central = true;
  for (int i = 0; i < 50; ++i) central = central && r.commutes(c, r.random());
  CHECK(central);
  CHECK(s.is_scalar(c));
}

TEST_CASE("invertibility test") {
  Session s(7, 12);
  CHECK(s.ring.is_invertible(s.ring.identity()));
  CHECK_FALSE(s.ring.is_invertible(s.ring.zero()));
  CHECK_FALSE(s.ring.is_invertible(s.enc(1, 2, 2, 4)));
  CHECK(s.ring.is_invertible(s.enc(1, 2, 3, 4)));
}

TEST_CASE("operations are homomorphic under the hidden decoder") {
  for (auto q : {5ULL, 9ULL, 27ULL, 1009ULL}) {
    CAPTURE(q);
    Session s(q, 13, false);
    const MatrixRing &m = s.mats();
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
      const Cryptoelement x = s.ring.random(), y = s.ring.random();
      const Mat2 px = s.plain(x), py = s.plain(y);
      ok = s.plain(s.ring.add(x, y)) == m.add(px, py);
      ok = ok && s.plain(s.ring.mul(x, y)) == m.mul(px, py);
      ok = ok && s.plain(s.ring.neg(x)) == m.neg(px);
      ok = ok && s.ring.eq(x, y) == (px == py);
    }
    CHECK(ok);
  }
}

TEST_CASE("encodings are re-randomized") {
  Session s(9, 14, false);
  int distinct = 0;
  for (int i = 0; i < 1000; ++i) {
    const Cryptoelement x = s.ring.random();
    const Cryptoelement y = s.ring.add(x, s.ring.zero());
    if (!x.same_string(y) && s.ring.eq(x, y)) ++distinct;
  }
  CHECK(distinct >= 990);
}

TEST_CASE("query counters are exact") {
  Session s(5, 15, false);
  RingOracle &o = s.oracle;
  const QueryCounts start = o.counts();
  CHECK(start == QueryCounts{});
  std::vector<Cryptoelement> pool;
  for (int i = 0; i < 20; ++i) pool.push_back(o.random());
  for (int i = 0; i < 20; ++i) pool.push_back(o.add(pool[i], pool[i + 1]));
  for (int i = 0; i < 15; ++i) pool.push_back(o.negate(pool[i]));
  for (int i = 0; i < 25; ++i) pool.push_back(o.multiply(pool[i], pool[i + 2]));
  for (int i = 0; i < 20; ++i) (void)o.equal(pool[i], pool[i + 3]);
  (void)s.oracle.decode(pool[0]);
  (void)s.oracle.encode(s.mats().identity());
  CHECK(o.counts() == QueryCounts{20, 20, 15, 25, 20});
  CHECK(o.counts().total() == 100);
}

TEST_CASE("handles are bound to their session") {
  Session a(5, 16, false), b(5, 16, false);
  CHECK(a.oracle.session_id() != b.oracle.session_id());
  const Cryptoelement x = a.ring.random();
  const Cryptoelement y = b.ring.random();
  CHECK_THROWS_AS(b.oracle.add(x, y), UsageError);
  CHECK_THROWS_AS(b.oracle.multiply(y, x), UsageError);
  CHECK_THROWS_AS(b.oracle.negate(x), UsageError);
  CHECK_THROWS_AS(b.oracle.equal(x, y), UsageError);
  const Cryptoelement forged(std::vector<std::uint8_t>(3, 0), b.oracle.session_id());
  CHECK_THROWS_AS(b.oracle.negate(forged), UsageError);
}

TEST_CASE("sessions are deterministic per seed") {
  Session a(13, 17, false), b(13, 17, false), c(13, 18, false);
  bool same = true, differs = false;
  for (int i = 0; i < 50; ++i) {
    const Cryptoelement x = a.ring.random(), y = b.ring.random(), z = c.ring.random();
    same = same && std::ranges::equal(x.bytes(), y.bytes());
    differs = differs || !std::ranges::equal(x.bytes(), z.bytes());
  }
  CHECK(same);
  CHECK(differs);
}
