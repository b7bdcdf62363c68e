#include "bbring/counter_rng.hpp"
#include "bbring/errors.hpp"
#include "bbring/exhaustive.hpp"
#include "bbring/field.hpp"
#include "bbring/mat2.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace bbring;

namespace {

FqElement random_element(const Field &f, CounterRng &rng) { return f.from_index(rng.below(f.order())); }

Mat2 random_matrix(const MatrixRing &r, CounterRng &rng) {
  Mat2 m;
  for (auto &x : m.entries) x = random_element(r.field(), rng);
  return m;
}

const std::vector<std::uint64_t> kOrders{3, 5, 7, 9, 25, 27, 81, 101, 1009, 65519};

} // namespace

TEST_CASE("field parameters") {
  SUBCASE("parse with explicit modulus") {
    const FieldParams p = FieldParams::parse("p=3,m=2,irr=1,0,1");
    CHECK(p.p == 3);
    CHECK(p.m == 2);
    CHECK(p.q == 9);
    CHECK(p.irreducible == std::vector<std::uint64_t>{1, 0, 1});
  }
  SUBCASE("parse without modulus uses the default") {
    CHECK(FieldParams::parse("p=5,m=2") == FieldParams::for_order(25));
  }
  SUBCASE("built-in defaults") {
    CHECK(default_irreducible(3, 2) == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(default_irreducible(5, 2) == std::vector<std::uint64_t>{2, 0, 1});
    CHECK(default_irreducible(3, 3) == std::vector<std::uint64_t>{1, 2, 0, 1});
    CHECK(default_irreducible(7, 2) == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(is_irreducible(3, FieldParams::for_order(81).irreducible));
    CHECK(FieldParams::for_order(81).m == 4);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(FieldParams::for_order(4), UsageError);
    CHECK_THROWS_AS(FieldParams::for_order(2), UsageError);
    CHECK_THROWS_AS(FieldParams::for_order(15), UsageError);
    CHECK_THROWS_AS(FieldParams::for_order(kMaxFieldOrder + 1), UsageError);
    CHECK_THROWS_AS(FieldParams::parse("p=3,m=2,irr=2,0,1"), UsageError); // x^2 + 2 = (x-1)(x+1)
    CHECK_THROWS_AS(FieldParams::parse("p=3,m=2,irr=1,1"), UsageError);
    CHECK_THROWS_AS(FieldParams::parse("q=9"), UsageError);
    CHECK_THROWS_AS(FieldParams::parse("p=3,m=two"), UsageError);
  }
  SUBCASE("primality") {
    CHECK(is_prime(65519));
    CHECK_FALSE(is_prime(65521 * 3));
    CHECK_FALSE(is_prime(1));
  }
}

TEST_CASE("field arithmetic examples") {
  const Field f5(FieldParams::for_order(5));
  CHECK(f5.inv(f5.from_integer(2)) == f5.from_integer(3));
  CHECK_THROWS_AS(f5.inv(f5.zero()), DomainError);

  const Field f7(FieldParams::for_order(7));
  CHECK(f7.pow(f7.from_integer(3), 6) == f7.one());
  CHECK(f7.pow(f7.from_integer(3), 3) == f7.from_integer(-1));

  const Field f9(FieldParams::parse("p=3,m=2,irr=1,0,1"));
  const FqElement x = f9.from_index(3); // coefficients (0, 1)
  CHECK(x.coeffs[0] == 0);
  CHECK(x.coeffs[1] == 1);
  CHECK(f9.mul(x, x) == f9.from_integer(2));
  CHECK(f9.pow(x, 4) == f9.one());
}

TEST_CASE("field axioms on random triples") {
  for (auto q : kOrders) {
    CAPTURE(q);
    const Field f(FieldParams::for_order(q));
    CounterRng rng(q, 11);
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
      const FqElement a = random_element(f, rng), b = random_element(f, rng),
                      c = random_element(f, rng);
      ok = f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
      ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
      ok = ok && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
      ok = ok && f.mul(a, b) == f.mul(b, a);
      ok = ok && f.is_zero(f.add(a, f.neg(a)));
      if (!f.is_zero(a)) ok = ok && f.mul(a, f.inv(a)) == f.one();
      ok = ok && f.pow(a, q) == a;
    }
    CHECK(ok);
  }
}

TEST_CASE("index and serialization round trips") {
  for (auto q : {3ULL, 9ULL, 27ULL, 257ULL, 65519ULL}) {
    CAPTURE(q);
    const Field f(FieldParams::for_order(q));
    CHECK(f.limb_width() == (f.characteristic() < 256 ? 1u : f.characteristic() < 65536 ? 2u : 3u));
    CounterRng rng(q);
    std::vector<std::uint8_t> buf(f.serialized_size());
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t idx = rng.below(q);
      const FqElement a = f.from_index(idx);
      CHECK(f.index_of(a) == idx);
      f.serialize(a, buf);
      CHECK(f.deserialize(buf) == a);
    }
  }
  const Field f5(FieldParams::for_order(5));
  std::vector<std::uint8_t> bad{7};
  CHECK_THROWS_AS(f5.deserialize(bad), DomainError);
}

TEST_CASE("matrix examples") {
  const Field f5(FieldParams::for_order(5));
  const MatrixRing m5(f5);
  const Mat2 a = m5.from_integers(0, 1, 0, 0);
  const Mat2 b = m5.from_integers(0, 0, 1, 0);
  CHECK(m5.commutator(a, b) == m5.from_integers(1, 0, 0, -1));
  CHECK(m5.commutator(a, a) == m5.zero());

  const Field f7(FieldParams::for_order(7));
  const MatrixRing m7(f7);
  const Mat2 s = m7.from_integers(2, 0, 0, -2);
  CHECK(m7.mul(s, s) == m7.from_integers(4, 0, 0, 4));

  const Mat2 g = m7.from_integers(1, 2, 3, 4);
  CHECK(m7.mul(g, m7.inverse(g)) == m7.identity());
  CHECK_THROWS_AS(m7.inverse(m7.from_integers(1, 2, 2, 4)), DomainError);
}

TEST_CASE("exponent of GL_2") {
  CHECK(gl2_exponent(FieldParams::for_order(5)) == 120);
  CHECK(gl2_exponent(FieldParams::for_order(3)) == 24);
  CHECK(gl2_exponent(FieldParams::for_order(13)) == 2184);
  CHECK(gl2_exponent(FieldParams::for_order(65519)) == 65519ULL * (65519ULL * 65519ULL - 1));

  for (auto q : {3ULL, 9ULL, 13ULL, 25ULL, 101ULL}) {
    CAPTURE(q);
    const FieldParams params = FieldParams::for_order(q);
    const Field f(params);
    const MatrixRing r(f);
    const std::uint64_t e = gl2_exponent(params);
    CounterRng rng(q, 2);
    int invertible = 0, singular = 0;
    bool ok = true;
    while (invertible < 500 || singular < 50) {
      const Mat2 m = random_matrix(r, rng);
      if (r.is_invertible(m)) {
        if (invertible++ < 500) ok = ok && r.pow(m, e) == r.identity();
      } else if (!(m == r.zero())) {
        if (singular++ < 50) ok = ok && !(r.pow(m, e) == r.identity());
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("commutators close into sl_2 and trace-zero squares are scalar") {
  for (auto q : {3ULL, 7ULL, 9ULL, 27ULL, 1009ULL}) {
    CAPTURE(q);
    const Field f(FieldParams::for_order(q));
    const MatrixRing r(f);
    CounterRng rng(q, 3);
    bool ok = true;
    for (int i = 0; i < 500 && ok; ++i) {
      const Mat2 c = r.commutator(random_matrix(r, rng), random_matrix(r, rng));
      ok = f.is_zero(r.trace(c));
      const Mat2 s = r.mul(c, c);
      const FqElement expected = f.add(f.mul(c.at(0, 0), c.at(0, 0)), f.mul(c.at(0, 1), c.at(1, 0)));
      ok = ok && r.is_scalar(s) && s.at(0, 0) == expected;
    }
    CHECK(ok);
  }
}

TEST_CASE("exhaustive invertibility rate") {
  const Field f3(FieldParams::for_order(3));
  CHECK(brute_force_invertibility_rate(f3) == Fraction{48, 81});
  CHECK(brute_force_invertibility_rate(f3).num == 48);
  const Field f5(FieldParams::for_order(5));
  CHECK(brute_force_invertibility_rate(f5) == Fraction{480, 625});
  for (auto q : {3ULL, 5ULL, 7ULL, 9ULL}) {
    CAPTURE(q);
    const Field f(FieldParams::for_order(q));
    const Fraction rate = brute_force_invertibility_rate(f);
    CHECK(rate == Fraction{(q * q - 1) * (q * q - q), q * q * q * q});
    CHECK(rate.value() >= 1.0 - 2.0 / static_cast<double>(q));
  }
  CHECK_THROWS_AS(brute_force_invertibility_rate(Field(FieldParams::for_order(29))), UsageError);
}

TEST_CASE("exhaustive commutator-square table") {
  SUBCASE("q = 3") {
    const Field f(FieldParams::for_order(3));
    const ScalarDistribution d = brute_force_commutator_square_distribution(f);
    CHECK(d.total == 6561);
    REQUIRE(d.counts.size() == 3);
    CHECK(d.counts[0] == 2673);
    CHECK(d.counts[1] == 2592);
    CHECK(d.counts[2] == 1296);
    CHECK(d.counts[0] + d.counts[1] + d.counts[2] == d.total);
    CHECK(d.probability(2) == Fraction{16, 81});
  }
  SUBCASE("q = 5") {
    const Field f(FieldParams::for_order(5));
    const ScalarDistribution d = brute_force_commutator_square_distribution(f);
    CHECK(d.total == 390625);
    CHECK(d.counts == std::vector<std::uint64_t>{90625, 90000, 60000, 60000, 90000});
    for (std::uint64_t i = 1; i < 5; ++i) {
      CHECK(std::abs(d.probability(i).value() - 0.2) <= 3.0 / 25.0);
    }
  }
  SUBCASE("too large") {
    CHECK_THROWS_AS(brute_force_commutator_square_distribution(Field(FieldParams::for_order(11))),
                    UsageError);
  }
}
