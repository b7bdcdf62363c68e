#include "bbring/errors.hpp"
#include "bbring/recovery.hpp"

#include <chrono>
#include <functional>

namespace bbring {

namespace {

constexpr std::uint64_t kRecoveryStream = 0x5245434f56455259ULL;

class StepRunner {
public:
  StepRunner(RingOracle &oracle, RecoveryReport &report) : oracle_(oracle), report_(report) {}

  /// Runs fn under `name`, adding its queries, retries and time to that step's
  /// record. Repeated names accumulate into one record.
  void run(const std::string &name, const std::function<void(unsigned *)> &fn) {
    StepRecord *rec = find_or_add(name);
    const QueryCounts before = oracle_.counts();
    const auto start = std::chrono::steady_clock::now();
    unsigned retries = 0;
    current_ = name;
    auto account = [&] {
      rec = find_or_add(name);
      rec->retries += retries;
      rec->queries += oracle_.counts() - before;
      rec->milliseconds += std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    };
    try {
      fn(&retries);
    } catch (...) {
      account();
      throw;
    }
    account();
  }

  const std::string &current() const noexcept { return current_; }

private:
  StepRecord *find_or_add(const std::string &name) {
    for (auto &s : report_.steps) {
      if (s.name == name) return &s;
    }
    report_.steps.push_back(StepRecord{name, 0, {}, 0.0});
    return &report_.steps.back();
  }

  RingOracle &oracle_;
  RecoveryReport &report_;
  std::string current_;
};

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

} // namespace

bool RecoveryReport::all_checks_pass() const noexcept {
  for (const auto &c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

RecoveryResult recover(BlackBoxRing &ring, std::uint64_t q, const RecoveryConfig &config) {
  config.validate();
  const FactoredExponent fe = FactoredExponent::for_order(q);
  const SylowData sylow = SylowData::for_order(q);

  RecoveryResult result;
  RecoveryReport &report = result.report;
  report.q = q;
  report.seed = config.seed;
  RingOracle &oracle = ring.oracle();
  const QueryCounts start = oracle.counts();
  StepRunner steps(oracle, report);
  CounterRng rng(config.seed, kRecoveryStream);

  try {
    steps.run("identity", [&](unsigned *) {
      ring.zero();
      ring.identity(fe.value, config.max_retries_per_step);
    });
    const BlackBoxGroup group(ring, fe);

    std::optional<BlackBoxField> field;
    steps.run("scalar_field", [&](unsigned *) { field.emplace(build_black_box_field(ring, q)); });

    GroupElement e1;
    steps.run("noncentral_involution", [&](unsigned *retries) {
      e1 = find_noncentral_involution({ring, group, rng, config, retries});
    });

    FourGroup fg;
    steps.run("four_group", [&](unsigned *retries) {
      fg = build_four_group({ring, group, rng, config, retries}, e1);
    });

    std::optional<QuotientContext> quotient;
    steps.run("quotient", [&](unsigned *) { quotient.emplace(group, config.centrality_trials); });

    ExactEquality exact(group);
    CentralizerSampler torus(group, fg.e1, exact, rng);
    GroupElement r1;
    bool descended = false;
    for (unsigned attempt = 0; attempt < config.max_retries_per_step && !descended; ++attempt) {
      GroupElement w, s1, s2;
      steps.run("torus_normalizer", [&](unsigned *retries) {
        w = find_torus_normalizer_element({ring, group, rng, config, retries}, fg, *quotient);
      });
      steps.run("sylow_generators", [&](unsigned *retries) {
        std::tie(s1, s2) = sylow2_generators({ring, group, rng, config, retries}, torus, sylow);
      });
      steps.run("dihedral_descent", [&](unsigned *retries) {
        try {
          r1 = dihedral_descent({ring, group, rng, config, retries}, s1, s2, w, sylow);
          descended = group.equal(group.mul(r1, r1), fg.e) &&
                      group.equal(group.mul(group.mul(r1, fg.e1), r1), fg.e2);
        } catch (const RecoveryError &) {
          descended = false;
        }
        if (!descended) ++*retries;
      });
    }
    if (!descended) throw RecoveryError("dihedral_descent", "restart budget exhausted");

    MatrixUnits units;
    steps.run("matrix_units", [&](unsigned *) { units = matrix_units(ring, fg, r1, q); });

    result.proxy.emplace(StructuralProxy{fg, r1, units.e11, units.e12, units.e21, units.e22, sylow,
                                         fe, std::move(*field)});
    report.success = true;
  } catch (const RecoveryError &) {
    report.success = false;
    report.failing_step = steps.current();
    result.proxy.reset();
  }
  report.queries = oracle.counts() - start;
  return result;
}

std::vector<CheckRecord> verify_proxy(BlackBoxRing &ring, const StructuralProxy &proxy,
                                      const RecoveryConfig &config) {
  constexpr unsigned kFieldPairs = 500;
  constexpr unsigned kFieldSamples = 200;
  constexpr unsigned kCentralityProbes = 50;

  std::vector<CheckRecord> checks;
  auto record = [&](std::string name, bool pass) { checks.push_back({std::move(name), pass}); };
  const BlackBoxField &z = proxy.field_view;
  const FourGroup &fg = proxy.four_group;
  const Cryptoelement &e = fg.e.handle();
  const Cryptoelement &r1 = proxy.r1.handle();
  auto eq = [&](const Cryptoelement &a, const Cryptoelement &b) { return ring.eq(a, b); };
  auto mul = [&](const Cryptoelement &a, const Cryptoelement &b) { return ring.mul(a, b); };

  {
    const Cryptoelement &m = fg.minus_e.handle();
    const Cryptoelement &a = fg.e1.handle();
    const Cryptoelement &b = fg.e2.handle();
    bool ok = eq(mul(m, m), e) && eq(mul(a, a), e) && eq(mul(b, b), e);
    ok = ok && !eq(m, e) && !eq(a, e) && !eq(b, e) && !eq(a, b) && !eq(a, m) && !eq(b, m);
    ok = ok && eq(mul(a, b), m) && eq(mul(m, a), b) && eq(mul(m, b), a);
    ok = ok && eq(m, ring.neg(e));
    const Cryptoelement x = ring.random();
    ok = ok && eq(mul(m, x), ring.neg(x)) && eq(mul(x, m), ring.neg(x));
    ok = ok && !ring.commutes(a, proxy.e12) && !ring.commutes(b, proxy.e12);
    record("four_group", ok);
  }
  {
    const MatrixUnits units{proxy.e11, proxy.e12, proxy.e21, proxy.e22};
    record("matrix_units", matrix_unit_relations_hold(ring, units));
  }
  {
    bool ok = eq(mul(r1, r1), e);
    ok = ok && eq(mul(mul(r1, fg.e1.handle()), r1), fg.e2.handle());
    ok = ok && eq(mul(mul(r1, proxy.e11), r1), proxy.e22);
    ok = ok && eq(mul(mul(r1, proxy.e12), r1), proxy.e21);
    record("conjugation_action", ok);
  }

  {
    bool ok = true;
    for (unsigned i = 0; i < kCentralityProbes && ok; ++i) {
      ok = ring.commutes(z.random(), ring.random());
    }
    record("field_central", ok);
  }
  {
    bool ok = true;
    for (unsigned i = 0; i < kFieldPairs && ok; ++i) {
      const Cryptoelement a = z.random();
      const Cryptoelement b = z.random();
      ok = eq(z.mul(a, b), z.mul(b, a)) && eq(z.add(a, b), z.add(b, a));
    }
    record("field_commutative", ok);
  }
  {
    bool ok = eq(z.inv(z.one()), z.one());
    for (unsigned i = 0; i < kFieldSamples && ok; ++i) {
      const Cryptoelement a = z.random_unit();
      ok = eq(z.mul(a, z.inv(a)), z.one());
    }
    record("field_fermat_inverse", ok);
  }
  {
    bool ok = true;
    for (unsigned i = 0; i < kFieldSamples && ok; ++i) {
      const Cryptoelement a = z.random();
      ok = eq(z.pow(a, z.order()), a);
    }
    record("field_frobenius", ok);
  }
  {
    // p prime: one has additive order p exactly iff one != 0 and p one = 0,
    // so {n one : 0 <= n < p} has exactly p elements.
    const std::uint64_t p = smallest_prime_factor(z.order());
    const bool ok = !z.is_zero(z.one()) && z.is_zero(z.from_integer(p));
    record("field_prime_subfield", ok);
  }
  {
    const Cryptoelement &zero = z.zero();
    const Cryptoelement &one = z.one();
    ZMatrix c = coordinatize(ring, proxy, e);
    bool ok = eq(c[0], one) && eq(c[1], zero) && eq(c[2], zero) && eq(c[3], one);
    c = coordinatize(ring, proxy, proxy.e12);
    ok = ok && eq(c[0], zero) && eq(c[1], one) && eq(c[2], zero) && eq(c[3], zero);
    c = coordinatize(ring, proxy, ring.zero());
    for (const auto &x : c) ok = ok && eq(x, zero);
    record("coordinatize_units", ok);
  }

  const unsigned n = config.homomorphism_sample_size;
  bool additive = true, multiplicative = true, ring_round_trip = true, field_round_trip = true,
       synth_multiplicative = true;
  auto same = [&](const ZMatrix &a, const ZMatrix &b) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (!eq(a[i], b[i])) return false;
    }
    return true;
  };
  for (unsigned i = 0; i < n; ++i) {
    const Cryptoelement x = ring.random();
    const Cryptoelement y = ring.random();
    const ZMatrix cx = coordinatize(ring, proxy, x);
    const ZMatrix cy = coordinatize(ring, proxy, y);
    const ZMatrix csum = coordinatize(ring, proxy, ring.add(x, y));
    const ZMatrix cprod = coordinatize(ring, proxy, ring.mul(x, y));
    ZMatrix sum;
    for (std::size_t j = 0; j < 4; ++j) sum[j] = z.add(cx[j], cy[j]);
    additive = additive && same(csum, sum);
    multiplicative = multiplicative && same(cprod, zmatrix_mul(z, cx, cy));
    ring_round_trip = ring_round_trip && eq(synthesize(ring, proxy, cx), x);

    ZMatrix w;
    for (auto &entry : w) entry = z.random();
    field_round_trip = field_round_trip && same(coordinatize(ring, proxy, synthesize(ring, proxy, w)), w);
    if (i % 2 == 0) {
      ZMatrix w2;
      for (auto &entry : w2) entry = z.random();
      synth_multiplicative =
          synth_multiplicative &&
          eq(mul(synthesize(ring, proxy, w), synthesize(ring, proxy, w2)),
             synthesize(ring, proxy, zmatrix_mul(z, w, w2)));
    }
  }
  record("coordinatize_additive", additive);
  record("coordinatize_multiplicative", multiplicative);
  record("round_trip_ring", ring_round_trip);
  record("round_trip_field", field_round_trip);
  record("synthesize_multiplicative", synth_multiplicative);
  return checks;
}

} // namespace bbring
