#pragma once

// Black box group toolkit over the invertible cryptoelements of a black box
// ring encrypting M_2(F_q), i.e. over X = GL_2(F_q) and its image mod scalars.

#include "bbring/black_box_ring.hpp"
#include "bbring/counter_rng.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bbring {

/// E = q(q^2 - 1) with its prime factorization.
struct FactoredExponent {
  std::uint64_t value = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;

  /// Factors q, q - 1 and q + 1 separately by trial division.
  static FactoredExponent for_order(std::uint64_t q);
  unsigned multiplicity(std::uint64_t prime) const noexcept;
};

/// Trial-division factorization of n >= 1, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// A cryptoelement known to be invertible.
class GroupElement {
public:
  GroupElement() = default;
  explicit GroupElement(Cryptoelement handle) : handle_(std::move(handle)) {}

  const Cryptoelement &handle() const noexcept { return handle_; }

private:
  Cryptoelement handle_;
};

/// The black box group X of invertible cryptoelements. Requires the ring
/// identity to be built for the same exponent.
class BlackBoxGroup {
public:
  static constexpr unsigned kDefaultRandomBudget = 64;

  BlackBoxGroup(BlackBoxRing &ring, FactoredExponent exponent);

  BlackBoxRing &ring() const noexcept { return *ring_; }
  const FactoredExponent &exponent() const noexcept { return exponent_; }

  GroupElement identity() const { return GroupElement(ring_->identity()); }
  GroupElement mul(const GroupElement &x, const GroupElement &y) const {
    return GroupElement(ring_->mul(x.handle(), y.handle()));
  }
  GroupElement pow(const GroupElement &x, std::uint64_t n) const {
    return GroupElement(ring_->pow(x.handle(), n));
  }
  /// x^(E - 1).
  GroupElement inverse(const GroupElement &x) const { return pow(x, exponent_.value - 1); }
  /// Exact equality in X.
  bool equal(const GroupElement &x, const GroupElement &y) const {
    return ring_->eq(x.handle(), y.handle());
  }
  bool commute(const GroupElement &x, const GroupElement &y) const {
    return ring_->commutes(x.handle(), y.handle());
  }

  /// A uniformly random invertible element, by rejection on ring samples.
  GroupElement random(unsigned budget = kDefaultRandomBudget) const;
  /// Checks invertibility; throws UsageError otherwise.
  GroupElement adopt(const Cryptoelement &x) const;

private:
  BlackBoxRing *ring_;
  FactoredExponent exponent_;
};

/// Equality used for group computations: exact in X, or modulo the center.
class GroupEquality {
public:
  virtual ~GroupEquality() = default;
  virtual bool equal(const GroupElement &x, const GroupElement &y) = 0;
  virtual bool is_identity(const GroupElement &x) = 0;
};

/// Exact equality in X via the oracle.
class ExactEquality final : public GroupEquality {
public:
  explicit ExactEquality(const BlackBoxGroup &group) : group_(&group) {}
  bool equal(const GroupElement &x, const GroupElement &y) override { return group_->equal(x, y); }
  bool is_identity(const GroupElement &x) override {
    return group_->equal(x, group_->identity());
  }

private:
  const BlackBoxGroup *group_;
};

/// Equality of X / Z(X) = PGL_2(F_q): x == y iff x^-1 y commutes with a fixed
/// family of odd-order witnesses containing a non-commuting pair.
///
/// In GL_2, two non-commuting elements have only scalars as common
/// centralizer, so once such a pair is present the test is exact.
class QuotientContext final : public GroupEquality {
public:
  static constexpr unsigned kMinTrials = 8;
  static constexpr unsigned kDefaultTrials = 16;
  static constexpr unsigned kDefaultWitnessBudget = 256;

  QuotientContext(const BlackBoxGroup &group, unsigned centrality_trials = kDefaultTrials,
                  unsigned witness_budget = kDefaultWitnessBudget);

  bool equal(const GroupElement &x, const GroupElement &y) override;
  bool is_identity(const GroupElement &x) override;

  unsigned centrality_trials() const noexcept { return trials_; }
  const std::vector<GroupElement> &witnesses() const noexcept { return witnesses_; }

private:
  const BlackBoxGroup *group_;
  unsigned trials_;
  std::vector<GroupElement> witnesses_;
};

/// Exact multiplicative order under `eq`: start from E and strip primes while
/// the power stays trivial.
std::uint64_t element_order(const BlackBoxGroup &group, const GroupElement &g, GroupEquality &eq);

/// g^(ord/2) when ord(g) is even, else nothing.
std::optional<GroupElement> involution_from(const BlackBoxGroup &group, const GroupElement &g,
                                            GroupEquality &eq);

/// Monte Carlo centrality test against `trials` fresh random invertibles.
/// One-sided: central elements always pass.
bool is_central(const BlackBoxGroup &group, const GroupElement &g, unsigned trials);

/// Output of one Bray step.
struct BraySample {
  GroupElement element;
  /// True when [t,g] had odd order and the output is g [t,g]^k.
  bool odd_branch = false;
};

/// One draw of Bray's centralizer trick for the involution t under `eq`:
/// c = t^-1 g^-1 t g for random g; if ord(c) = 2k+1 return g c^k, else c^(ord/2).
/// The result always commutes with t under `eq`.
BraySample bray_centralizer_sample(const BlackBoxGroup &group, const GroupElement &t,
                                   GroupEquality &eq);
/// The same step for a given g.
BraySample bray_centralizer_sample(const BlackBoxGroup &group, const GroupElement &t,
                                   const GroupElement &g, GroupEquality &eq);

/// Stream of elements of C(t). Each output is a fresh odd-branch Bray sample
/// times a random word of length <= kMaxWordLength over earlier outputs and
/// even-branch involutions.
class CentralizerSampler {
public:
  static constexpr unsigned kMaxWordLength = 4;
  static constexpr unsigned kDefaultBudget = 256;

  CentralizerSampler(const BlackBoxGroup &group, GroupElement t, GroupEquality &eq,
                     CounterRng &rng, unsigned budget = kDefaultBudget);

  /// Throws RecoveryError when `budget` Bray draws yield no odd-branch sample.
  GroupElement next();

  std::uint64_t bray_draws() const noexcept { return draws_; }

private:
  const BlackBoxGroup *group_;
  GroupElement t_;
  GroupEquality *eq_;
  CounterRng *rng_;
  unsigned budget_;
  std::vector<GroupElement> pool_;
  std::uint64_t draws_ = 0;
};

/// `count` elements from a CentralizerSampler.
std::vector<GroupElement> random_in_centralizer(const BlackBoxGroup &group, const GroupElement &t,
                                                GroupEquality &eq, CounterRng &rng,
                                                std::size_t count);

} // namespace bbring
