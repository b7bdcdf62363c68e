#pragma once

// Exact enumeration over M_2(F_q) for tiny q. These are reference tables for
// the sampling experiments, not part of the recovery path.

#include "bbring/field.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace bbring {

/// An unreduced count ratio. Equality compares the rational values.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction &o) const noexcept {
    const std::uint64_t g1 = std::gcd(num, den), g2 = std::gcd(o.num, o.den);
    return num / g1 == o.num / g2 && den / g1 == o.den / g2;
  }
};

/// Exact law of c where [a,b]^2 = c I, over all pairs (a, b) in M_2(F_q)^2.
struct ScalarDistribution {
  /// counts[Field::index_of(c)] = number of pairs producing c I.
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  Fraction probability(std::uint64_t index) const { return {counts.at(index), total}; }
};

inline constexpr std::uint64_t kMaxExhaustiveCommutatorOrder = 9;
inline constexpr std::uint64_t kMaxExhaustiveInvertibilityOrder = 27;

/// Exhausts all q^8 pairs. Throws UsageError for q > 9.
ScalarDistribution brute_force_commutator_square_distribution(const Field &field);

/// |GL_2(F_q)| / q^4 by enumerating all q^4 matrices. Throws UsageError for q > 27.
Fraction brute_force_invertibility_rate(const Field &field);

} // namespace bbring
