#include "bbring/exhaustive.hpp"

#include "bbring/errors.hpp"

#include <array>

namespace bbring {

namespace {

// Addition and multiplication tables on element indices, for tight enumeration loops.
struct IndexTables {
  std::uint32_t q;
  std::vector<std::uint32_t> add, mul, neg;

  explicit IndexTables(const Field &f) : q(static_cast<std::uint32_t>(f.order())) {
    add.resize(std::size_t{q} * q);
    mul.resize(std::size_t{q} * q);
    neg.resize(q);
    for (std::uint32_t i = 0; i < q; ++i) {
      const FqElement a = f.from_index(i);
      neg[i] = static_cast<std::uint32_t>(f.index_of(f.neg(a)));
      for (std::uint32_t j = 0; j < q; ++j) {
        const FqElement b = f.from_index(j);
        add[i * q + j] = static_cast<std::uint32_t>(f.index_of(f.add(a, b)));
        mul[i * q + j] = static_cast<std::uint32_t>(f.index_of(f.mul(a, b)));
      }
    }
  }

  std::uint32_t plus(std::uint32_t a, std::uint32_t b) const { return add[a * q + b]; }
  std::uint32_t times(std::uint32_t a, std::uint32_t b) const { return mul[a * q + b]; }
  std::uint32_t minus(std::uint32_t a, std::uint32_t b) const { return add[a * q + neg[b]]; }
};

using IdxMat = std::array<std::uint32_t, 4>;

IdxMat decode(std::uint64_t code, std::uint32_t q) {
  IdxMat m;
  for (auto &x : m) {
    x = static_cast<std::uint32_t>(code % q);
    code /= q;
  }
  return m;
}

IdxMat mat_mul(const IndexTables &t, const IdxMat &a, const IdxMat &b) {
  return {t.plus(t.times(a[0], b[0]), t.times(a[1], b[2])),
          t.plus(t.times(a[0], b[1]), t.times(a[1], b[3])),
          t.plus(t.times(a[2], b[0]), t.times(a[3], b[2])),
          t.plus(t.times(a[2], b[1]), t.times(a[3], b[3]))};
}

} // namespace

ScalarDistribution brute_force_commutator_square_distribution(const Field &field) {
  const std::uint64_t q = field.order();
  if (q > kMaxExhaustiveCommutatorOrder) {
    throw UsageError("exhaustive commutator-square table needs q <= " +
                     std::to_string(kMaxExhaustiveCommutatorOrder) + " (q^8 pairs), got q = " +
                     std::to_string(q));
  }
  const IndexTables t(field);
  const std::uint64_t n = q * q * q * q;
  std::vector<IdxMat> mats(n);
  for (std::uint64_t i = 0; i < n; ++i) mats[i] = decode(i, t.q);

  ScalarDistribution out;
  out.counts.assign(q, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      const IdxMat ab = mat_mul(t, mats[i], mats[j]);
      const IdxMat ba = mat_mul(t, mats[j], mats[i]);
      const IdxMat c{t.minus(ab[0], ba[0]), t.minus(ab[1], ba[1]), t.minus(ab[2], ba[2]),
                     t.minus(ab[3], ba[3])};
      const IdxMat c2 = mat_mul(t, c, c);
      if (c2[1] != 0 || c2[2] != 0 || c2[0] != c2[3]) {
        throw DomainError("commutator square is not scalar");
      }
      ++out.counts[c2[0]];
    }
  }
  out.total = n * n;
  return out;
}

Fraction brute_force_invertibility_rate(const Field &field) {
  const std::uint64_t q = field.order();
  if (q > kMaxExhaustiveInvertibilityOrder) {
    throw UsageError("exhaustive invertibility count needs q <= " +
                     std::to_string(kMaxExhaustiveInvertibilityOrder));
  }
  const IndexTables t(field);
  const std::uint64_t n = q * q * q * q;
  std::uint64_t invertible = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const IdxMat m = decode(i, t.q);
    if (t.minus(t.times(m[0], m[3]), t.times(m[1], m[2])) != 0) ++invertible;
  }
  return {invertible, n};
}

} // namespace bbring
