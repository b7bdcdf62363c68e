#include "bbring/errors.hpp"
#include "bbring/recovery.hpp"

#include <bit>

namespace bbring {

void RecoveryConfig::validate() const {
  if (max_retries_per_step == 0 || homomorphism_sample_size == 0) {
    throw UsageError("recovery budgets must be positive");
  }
  if (generator_trials < 20) throw UsageError("generator_trials must be at least 20");
  if (centrality_trials < QuotientContext::kMinTrials) {
    throw UsageError("centrality_trials must be at least " +
                     std::to_string(QuotientContext::kMinTrials));
  }
}

SylowData SylowData::for_order(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) throw UsageError("q must be odd and at least 3");
  SylowData s;
  s.k = static_cast<unsigned>(std::countr_zero(q - 1));
  s.l = (q - 1) >> s.k;
  return s;
}

const Cryptoelement &StructuralProxy::unit(std::size_t i, std::size_t j) const {
  if (i == 0) return j == 0 ? e11 : e12;
  return j == 0 ? e21 : e22;
}

GroupElement find_noncentral_involution(const RecoveryContext &ctx) {
  ExactEquality exact(ctx.group);
  for (unsigned attempt = 0; attempt < ctx.config.max_retries_per_step; ++attempt) {
    auto t = involution_from(ctx.group, ctx.group.random(), exact);
    if (t && !is_central(ctx.group, *t, ctx.config.centrality_trials)) return *t;
    ctx.note_retry();
  }
  throw RecoveryError("noncentral_involution", "retry budget exhausted");
}

FourGroup build_four_group(const RecoveryContext &ctx, const GroupElement &e1) {
  const BlackBoxGroup &group = ctx.group;
  ExactEquality exact(group);
  CentralizerSampler torus(group, e1, exact, ctx.rng);
  const GroupElement e = group.identity();
  for (unsigned attempt = 0; attempt < ctx.config.max_retries_per_step; ++attempt) {
    auto u = involution_from(group, torus.next(), exact);
    if (!u || group.equal(*u, e) || group.equal(*u, e1)) {
      ctx.note_retry();
      continue;
    }
    FourGroup fg;
    fg.e = e;
    fg.e1 = e1;
    if (is_central(group, *u, ctx.config.centrality_trials)) {
      fg.minus_e = *u;
      fg.e2 = group.mul(*u, e1);
    } else {
      fg.e2 = *u;
      fg.minus_e = group.mul(*u, e1);
    }
    return fg;
  }
  throw RecoveryError("four_group", "no second involution in the torus");
}

bool outside_torus(const BlackBoxGroup &group, const GroupElement &w, const FourGroup &fg) {
  return !group.commute(w, fg.e1);
}

GroupElement find_torus_normalizer_element(const RecoveryContext &ctx, const FourGroup &fg,
                                           QuotientContext &quotient) {
  // The image of e1 is the unique involution of the torus mod scalars; its
  // centralizer there is the normalizer of that torus.
  CentralizerSampler normalizer(ctx.group, fg.e1, quotient, ctx.rng);
  for (unsigned attempt = 0; attempt < ctx.config.max_retries_per_step; ++attempt) {
    GroupElement w = normalizer.next();
    if (outside_torus(ctx.group, w, fg) && quotient.is_identity(ctx.group.mul(w, w))) return w;
    ctx.note_retry();
  }
  throw RecoveryError("torus_normalizer", "no sample outside the torus");
}

SylowTrial sylow_generator_trial(const BlackBoxGroup &group, CentralizerSampler &torus,
                                 const SylowData &sylow) {
  SylowTrial trial;
  trial.s1 = group.pow(torus.next(), sylow.l);
  trial.s2 = group.pow(torus.next(), sylow.l);
  const std::uint64_t half_exponent = std::uint64_t{1} << (sylow.k - 1);
  const GroupElement u = group.pow(trial.s1, half_exponent);
  const GroupElement v = group.pow(trial.s2, half_exponent);
  const GroupElement e = group.identity();
  trial.success = !group.equal(u, e) && !group.equal(v, e) && !group.equal(u, v);
  return trial;
}

std::pair<GroupElement, GroupElement> sylow2_generators(const RecoveryContext &ctx,
                                                        CentralizerSampler &torus,
                                                        const SylowData &sylow,
                                                        unsigned *failures) {
  if (sylow.k < 1) throw UsageError("Sylow data needs k >= 1");
  for (unsigned n = 0; n < ctx.config.generator_trials; ++n) {
    SylowTrial trial = sylow_generator_trial(ctx.group, torus, sylow);
    if (trial.success) return {trial.s1, trial.s2};
    if (failures) ++*failures;
    ctx.note_retry();
  }
  throw RecoveryError("sylow_generators",
                      std::to_string(ctx.config.generator_trials) + " failed generator trials");
}

bool sylow_membership(const BlackBoxGroup &group, const GroupElement &s, unsigned i) {
  return group.equal(group.pow(s, std::uint64_t{1} << i), group.identity());
}

GroupElement dihedral_descent(const RecoveryContext &ctx, const GroupElement &s1,
                              const GroupElement &s2, const GroupElement &w,
                              const SylowData &sylow) {
  const BlackBoxGroup &group = ctx.group;
  const unsigned k = sylow.k;
  // Elements of S<r> are 2-elements of order dividing 2^(k+1); invert by powering.
  const std::uint64_t inverse_exponent = (std::uint64_t{1} << (k + 1)) - 1;
  auto commutator = [&](const GroupElement &a, const GroupElement &b) {
    return group.mul(group.mul(group.pow(a, inverse_exponent), group.pow(b, inverse_exponent)),
                     group.mul(a, b));
  };

  GroupElement r = group.pow(w, sylow.l);
  for (unsigned i = k; i-- > 0;) {
    const std::uint64_t step = std::uint64_t{1} << (k - i - 1);
    const GroupElement u = group.pow(s1, step);
    const GroupElement v = group.pow(s2, step);
    // Coset representatives of S_{i+1} / S_i times r.
    const std::array<GroupElement, 4> candidates{r, group.mul(u, r), group.mul(v, r),
                                                 group.mul(group.mul(u, v), r)};
    bool found = false;
    for (const auto &x : candidates) {
      if (!sylow_membership(group, group.mul(x, x), i)) continue;
      // x must act nontrivially on S_{i+1} / S_i, else the quotient is abelian.
      if (sylow_membership(group, commutator(u, x), i) &&
          sylow_membership(group, commutator(v, x), i)) {
        continue;
      }
      r = x;
      found = true;
      break;
    }
    if (!found) {
      throw RecoveryError("dihedral_descent",
                          "no reflection in the dihedral quotient at level " + std::to_string(i));
    }
  }
  return r;
}

MatrixUnits compute_matrix_units(BlackBoxRing &ring, const FourGroup &fg, const GroupElement &r1,
                                 std::uint64_t q) {
  const Cryptoelement &e = fg.e.handle();
  const Cryptoelement half = ring.pow(ring.add(e, e), q - 2);
  MatrixUnits u;
  u.e11 = ring.mul(half, ring.add(e, fg.e2.handle()));
  u.e22 = ring.mul(half, ring.add(e, fg.e1.handle()));
  u.e21 = ring.mul(r1.handle(), u.e11);
  u.e12 = ring.mul(r1.handle(), u.e22);
  return u;
}

bool matrix_unit_relations_hold(BlackBoxRing &ring, const MatrixUnits &units) {
  const std::array<std::array<const Cryptoelement *, 2>, 2> e{
      {{&units.e11, &units.e12}, {&units.e21, &units.e22}}};
  const Cryptoelement &zero = ring.zero();
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t d = 0; d < 2; ++d) {
          const Cryptoelement prod = ring.mul(*e[a][b], *e[c][d]);
          const Cryptoelement &expected = (b == c) ? *e[a][d] : zero;
          if (!ring.eq(prod, expected)) return false;
        }
      }
    }
  }
  return ring.eq(ring.add(units.e11, units.e22), ring.identity());
}

MatrixUnits matrix_units(BlackBoxRing &ring, FourGroup &fg, const GroupElement &r1,
                         std::uint64_t q) {
  MatrixUnits u = compute_matrix_units(ring, fg, r1, q);
  if (matrix_unit_relations_hold(ring, u)) return u;
  std::swap(fg.e1, fg.e2);
  u = compute_matrix_units(ring, fg, r1, q);
  if (matrix_unit_relations_hold(ring, u)) return u;
  throw RecoveryError("matrix_units", "matrix-unit relations fail for both labelings");
}

ZMatrix coordinatize(BlackBoxRing &ring, const StructuralProxy &proxy, const Cryptoelement &x) {
  const Cryptoelement &r1 = proxy.r1.handle();
  const Cryptoelement x11 = ring.mul(ring.mul(proxy.e11, x), proxy.e11);
  const Cryptoelement x22 = ring.mul(ring.mul(proxy.e22, x), proxy.e22);
  const Cryptoelement x12 = ring.mul(ring.mul(proxy.e11, x), proxy.e22);
  const Cryptoelement x21 = ring.mul(ring.mul(proxy.e22, x), proxy.e11);
  // Diagonal parts: x_ii + r1 x_ii r1. Off-diagonal parts: r1 x_ij + x_ij r1.
  auto conj_sum = [&](const Cryptoelement &y) {
    return ring.add(y, ring.mul(ring.mul(r1, y), r1));
  };
  auto anti_sum = [&](const Cryptoelement &y) {
    return ring.add(ring.mul(r1, y), ring.mul(y, r1));
  };
  return {conj_sum(x11), anti_sum(x12), anti_sum(x21), conj_sum(x22)};
}

Cryptoelement synthesize(BlackBoxRing &ring, const StructuralProxy &proxy, const ZMatrix &z) {
  // e12 and e21 generate M_2 as an algebra, so commuting with both is centrality.
  for (const auto &zij : z) {
    if (!ring.commutes(zij, proxy.e12) || !ring.commutes(zij, proxy.e21)) {
      throw UsageError("synthesize needs central (scalar) coordinates");
    }
  }
  Cryptoelement sum = ring.mul(z[0], proxy.e11);
  sum = ring.add(sum, ring.mul(z[1], proxy.e12));
  sum = ring.add(sum, ring.mul(z[2], proxy.e21));
  return ring.add(sum, ring.mul(z[3], proxy.e22));
}

ZMatrix zmatrix_mul(const BlackBoxField &f, const ZMatrix &a, const ZMatrix &b) {
  return {f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])), f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
          f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
          f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3]))};
}

} // namespace bbring
