#pragma once

// Structure recovery for a black box ring encrypting M_2(F_q), q odd and known:
// a black box field Z of scalars, matrix units e_ij, and the two-way
// isomorphism R <-> M_2(Z).

#include "bbring/bbgroup.hpp"
#include "bbring/black_box_ring.hpp"
#include "bbring/counter_rng.hpp"
#include "bbring/oracle.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bbring {

struct RecoveryConfig {
  std::uint64_t seed = 1;
  unsigned max_retries_per_step = 64;
  unsigned centrality_trials = 16;
  /// n in the 1 - (5/8)^n success bound of the Sylow generator search.
  unsigned generator_trials = 40;
  unsigned homomorphism_sample_size = 1000;

  /// Throws UsageError unless all fields are positive, generator_trials >= 20
  /// and centrality_trials >= QuotientContext::kMinTrials.
  void validate() const;
};

/// q - 1 = 2^k l with l odd.
struct SylowData {
  unsigned k = 0;
  std::uint64_t l = 0;

  static SylowData for_order(std::uint64_t q);
  unsigned chain_depth() const noexcept { return k; }
};

/// {e, -e, e1, e2}: the elementary abelian subgroup of order 4 in the torus
/// C(e1), labeled so that -e is central and e2 = (-e) e1.
struct FourGroup {
  GroupElement e;
  GroupElement minus_e;
  GroupElement e1;
  GroupElement e2;
};

/// The black box field Z of scalar cryptoelements. Random elements are
/// commutator squares [x,y]^2; arithmetic is the ring's.
class BlackBoxField {
public:
  static constexpr unsigned kUnitResampleBudget = 64;

  BlackBoxField(BlackBoxRing &ring, std::uint64_t q);

  std::uint64_t order() const noexcept { return q_; }
  BlackBoxRing &ring() const noexcept { return *ring_; }
  const Cryptoelement &zero() const noexcept { return zero_; }
  const Cryptoelement &one() const noexcept { return one_; }

  Cryptoelement random() const;
  /// Nonzero random element; resamples at most kUnitResampleBudget times.
  Cryptoelement random_unit() const;
  Cryptoelement add(const Cryptoelement &a, const Cryptoelement &b) const {
    return ring_->add(a, b);
  }
  Cryptoelement sub(const Cryptoelement &a, const Cryptoelement &b) const {
    return ring_->sub(a, b);
  }
  Cryptoelement neg(const Cryptoelement &a) const { return ring_->neg(a); }
  Cryptoelement mul(const Cryptoelement &a, const Cryptoelement &b) const {
    return ring_->mul(a, b);
  }
  Cryptoelement pow(const Cryptoelement &a, std::uint64_t n) const { return ring_->pow(a, n); }
  /// a^(q-2). Throws DomainError for a = 0.
  Cryptoelement inv(const Cryptoelement &a) const;
  bool eq(const Cryptoelement &a, const Cryptoelement &b) const { return ring_->eq(a, b); }
  bool is_zero(const Cryptoelement &a) const { return ring_->eq(a, zero_); }
  /// n * one.
  Cryptoelement from_integer(std::uint64_t n) const { return ring_->times(n, one_); }

private:
  BlackBoxRing *ring_;
  std::uint64_t q_;
  Cryptoelement zero_;
  Cryptoelement one_;
};

/// The recovered coordinate system. Refers to the ring it was built over.
struct StructuralProxy {
  FourGroup four_group;
  /// Swap involution: r1^2 = e and r1 e1 r1 = e2.
  GroupElement r1;
  Cryptoelement e11, e12, e21, e22;
  SylowData sylow;
  FactoredExponent exponent;
  BlackBoxField field_view;

  const Cryptoelement &unit(std::size_t i, std::size_t j) const;
};

/// Row-major 2x2 array of Z-cryptoelements.
using ZMatrix = std::array<Cryptoelement, 4>;

/// Query and retry bookkeeping for one pipeline step.
struct StepRecord {
  std::string name;
  unsigned retries = 0;
  QueryCounts queries;
  double milliseconds = 0.0;
};

struct CheckRecord {
  std::string name;
  bool pass = false;
};

/// Evidence for one run: per-step query counts, retries and timings.
struct RecoveryReport {
  std::uint64_t q = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<std::string> failing_step;
  QueryCounts queries;
  std::vector<StepRecord> steps;
  std::vector<CheckRecord> checks;

  bool all_checks_pass() const noexcept;
};

/// Shared state of the pipeline steps below.
struct RecoveryContext {
  BlackBoxRing &ring;
  const BlackBoxGroup &group;
  CounterRng &rng;
  const RecoveryConfig &config;
  /// Incremented on every rejected attempt when set.
  unsigned *retries = nullptr;

  void note_retry() const noexcept {
    if (retries) ++*retries;
  }
};

// --- Field of scalars ------------------------------------------------------

/// [x,y]^2 for fresh random x, y.
Cryptoelement scalar_random(BlackBoxRing &ring);
BlackBoxField build_black_box_field(BlackBoxRing &ring, std::uint64_t q);

// --- Involutions, torus, four-group, normalizer ----------------------------

GroupElement find_noncentral_involution(const RecoveryContext &ctx);
FourGroup build_four_group(const RecoveryContext &ctx, const GroupElement &e1);
/// Bray-samples the centralizer of the image of e1 in X / Z(X) and returns a
/// sample that does not commute with e1 in X, i.e. one outside the torus.
GroupElement find_torus_normalizer_element(const RecoveryContext &ctx, const FourGroup &fg,
                                           QuotientContext &quotient);
/// True when w does not commute with e1 in X: w lies in N(T) minus T.
bool outside_torus(const BlackBoxGroup &group, const GroupElement &w, const FourGroup &fg);

// --- Sylow 2-subgroup and dihedral descent ---------------------------------

/// One trial: s_i = t_i^l for two torus samples; success when
/// u = s1^(2^(k-1)) and v = s2^(2^(k-1)) are distinct non-identity elements.
struct SylowTrial {
  GroupElement s1, s2;
  bool success = false;
};
SylowTrial sylow_generator_trial(const BlackBoxGroup &group, CentralizerSampler &torus,
                                 const SylowData &sylow);
/// Retries sylow_generator_trial up to config.generator_trials times.
std::pair<GroupElement, GroupElement> sylow2_generators(const RecoveryContext &ctx,
                                                        CentralizerSampler &torus,
                                                        const SylowData &sylow,
                                                        unsigned *failures = nullptr);
/// s in S_i, i.e. s^(2^i) = e.
bool sylow_membership(const BlackBoxGroup &group, const GroupElement &s, unsigned i);
/// Descends from r = w^l through the dihedral quotients down to an involution
/// r1 swapping e1 and e2. Throws RecoveryError if some level has no candidate.
GroupElement dihedral_descent(const RecoveryContext &ctx, const GroupElement &s1,
                              const GroupElement &s2, const GroupElement &w,
                              const SylowData &sylow);

// --- Matrix units and coordinates ------------------------------------------

struct MatrixUnits {
  Cryptoelement e11, e12, e21, e22;
};
/// e11 = (e + e2)/2, e22 = (e + e1)/2, e21 = r1 e11, e12 = r1 e22.
MatrixUnits compute_matrix_units(BlackBoxRing &ring, const FourGroup &fg, const GroupElement &r1,
                                 std::uint64_t q);
/// All 16 products e_ab e_cd = delta_bc e_ad and e11 + e22 = e.
bool matrix_unit_relations_hold(BlackBoxRing &ring, const MatrixUnits &units);
/// compute_matrix_units, retrying once with e1 and e2 swapped.
MatrixUnits matrix_units(BlackBoxRing &ring, FourGroup &fg, const GroupElement &r1,
                         std::uint64_t q);

/// z_ij with x = sum z_ij e_ij; every z_ij is central.
ZMatrix coordinatize(BlackBoxRing &ring, const StructuralProxy &proxy, const Cryptoelement &x);
/// sum z_ij e_ij. Throws UsageError if some z_ij is not central.
Cryptoelement synthesize(BlackBoxRing &ring, const StructuralProxy &proxy, const ZMatrix &z);
/// 2x2 matrix product over Z.
ZMatrix zmatrix_mul(const BlackBoxField &field, const ZMatrix &a, const ZMatrix &b);

// --- Orchestration ---------------------------------------------------------

struct RecoveryResult {
  std::optional<StructuralProxy> proxy;
  RecoveryReport report;
};

/// Runs every step with per-step retry budgets. Never throws RecoveryError:
/// failures come back as report.success = false with the step named.
/// Deterministic given the oracle's seed, q and config.
/// The returned proxy references `ring`, which must outlive it.
RecoveryResult recover(BlackBoxRing &ring, std::uint64_t q, const RecoveryConfig &config);

/// The invariant suite: four-group, matrix units, conjugation action, field
/// checks on Z and the two-way isomorphism on random samples.
std::vector<CheckRecord> verify_proxy(BlackBoxRing &ring, const StructuralProxy &proxy,
                                      const RecoveryConfig &config);

} // namespace bbring
