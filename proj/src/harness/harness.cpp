#include "bbring/harness.hpp"

#include "bbring/errors.hpp"
#include "bbring/exhaustive.hpp"
#include "bbring/reference_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <thread>

namespace bbring {

namespace {

constexpr std::uint64_t kStatsStream = 0x5354415453000000ULL;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

// Setup shared by the torus-based experiments: identity, e1 and the four-group.
struct TorusSetup {
  ReferenceOracle oracle;
  BlackBoxRing ring;
  std::optional<BlackBoxGroup> group;
  CounterRng rng;
  RecoveryConfig config;
  FourGroup fg;

  TorusSetup(const RunSpec &spec)
      : oracle(spec.params, spec.seed), ring(oracle), rng(spec.seed, kStatsStream),
        config(spec.config) {
    const FactoredExponent fe = FactoredExponent::for_order(spec.params.q);
    ring.identity(fe.value, config.max_retries_per_step);
    group.emplace(ring, fe);
    const RecoveryContext ctx{ring, *group, rng, config};
    fg = build_four_group(ctx, find_noncentral_involution(ctx));
  }
};

} // namespace

std::string_view to_string(RunMode mode) noexcept {
  switch (mode) {
  case RunMode::recover: return "recover";
  case RunMode::verify: return "verify";
  case RunMode::stats: return "stats";
  case RunMode::bench: return "bench";
  }
  return "unknown";
}

std::string_view to_string(Claim claim) noexcept {
  switch (claim) {
  case Claim::invertibility: return "invertibility";
  case Claim::scalar_distribution: return "scalar_distribution";
  case Claim::coset_half: return "coset_half";
  case Claim::sylow_rate: return "sylow_rate";
  }
  return "unknown";
}

Claim parse_claim(std::string_view name) {
  for (Claim c : {Claim::invertibility, Claim::scalar_distribution, Claim::coset_half,
                  Claim::sylow_rate}) {
    if (to_string(c) == name) return c;
  }
  throw UsageError("unknown claim '" + std::string(name) + "'");
}

void RunSpec::validate() const {
  if (params.q < 3 || params.q % 2 == 0) throw UsageError("q must be odd");
  if (params.q > kMaxFieldOrder) throw UsageError("q exceeds the supported bound 2^20");
  config.validate();
}

std::uint64_t default_samples(Claim claim) noexcept {
  switch (claim) {
  case Claim::invertibility: return 100000;
  case Claim::scalar_distribution: return 100000;
  case Claim::coset_half: return 2000;
  case Claim::sylow_rate: return 10000;
  }
  return 1000;
}

double deviation_sigma(double empirical, double reference, std::uint64_t n) noexcept {
  const double var = reference * (1.0 - reference) / static_cast<double>(n);
  if (var <= 0.0) return empirical == reference ? 0.0 : INFINITY;
  return std::abs(empirical - reference) / std::sqrt(var);
}

RunOutcome run_recover(const RunSpec &spec) {
  spec.validate();
  RecoveryConfig config = spec.config;
  config.seed = spec.seed;
  ReferenceOracle oracle(spec.params, spec.seed);
  BlackBoxRing ring(oracle);
  RecoveryResult result = recover(ring, spec.params.q, config);

  RunOutcome out;
  out.report = std::move(result.report);
  if (!out.report.success) {
    out.exit_code = kExitRecoveryFailure;
    return out;
  }
  const QueryCounts before = oracle.counts();
  const auto start = std::chrono::steady_clock::now();
  out.report.checks = verify_proxy(ring, *result.proxy, config);
  StepRecord verify{"verify", 0, oracle.counts() - before,
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count()};
  out.report.queries += verify.queries;
  out.report.steps.push_back(std::move(verify));
  if (!out.report.all_checks_pass()) {
    out.report.success = false;
    out.report.failing_step = "verify";
    out.exit_code = kExitVerificationFailure;
  }
  return out;
}

StatReport run_stats(const RunSpec &spec, Claim claim, std::uint64_t samples) {
  spec.validate();
  if (samples == 0) throw UsageError("stats need at least one sample");
  const std::uint64_t q = spec.params.q;
  const double qd = static_cast<double>(q);
  StatReport rep;
  rep.claim = claim;
  rep.q = q;
  rep.n = samples;

  switch (claim) {
  case Claim::invertibility: {
    ReferenceOracle oracle(spec.params, spec.seed);
    BlackBoxRing ring(oracle);
    ring.identity(gl2_exponent(spec.params), spec.config.max_retries_per_step);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) hits += ring.is_invertible(ring.random()) ? 1 : 0;
    rep.empirical = static_cast<double>(hits) / static_cast<double>(samples);
    rep.reference = (1.0 - 1.0 / qd) * (1.0 - 1.0 / (qd * qd));
    rep.provenance = "closed_form";
    rep.sigma = deviation_sigma(rep.empirical, rep.reference, samples);
    break;
  }
  case Claim::scalar_distribution: {
    ReferenceOracle oracle(spec.params, spec.seed);
    BlackBoxRing ring(oracle);
    const Field &field = oracle.field();
    std::vector<std::uint64_t> counts(q, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
      const Mat2 plain = oracle.decode(scalar_random(ring));
      if (!oracle.matrices().is_scalar(plain)) {
        throw DomainError("commutator square decoded to a non-scalar matrix");
      }
      ++counts[field.index_of(plain.at(0, 0))];
    }
    const bool exhaustive = q <= kMaxExhaustiveCommutatorOrder;
    std::optional<ScalarDistribution> table;
    if (exhaustive) table = brute_force_commutator_square_distribution(field);
    rep.provenance = exhaustive ? "exhaustive_oracle" : "asymptotic_band";
    bool in_band = true;
    const double band = 3.0 / (qd * qd);
    for (std::uint64_t idx = 0; idx < q; ++idx) {
      StatClass c;
      c.label = field.to_string(field.from_index(idx));
      c.empirical = static_cast<double>(counts[idx]) / static_cast<double>(samples);
      if (exhaustive) {
        c.reference = table->probability(idx).value();
      } else {
        c.reference = 1.0 / qd;
        if (idx != 0 && std::abs(c.empirical - c.reference) > band) in_band = false;
      }
      c.sigma = deviation_sigma(c.empirical, c.reference, samples);
      // The zero class is not covered by the 1/q estimate.
      const bool headline = exhaustive || idx != 0;
      if (headline && (rep.classes.empty() || c.sigma >= rep.sigma)) {
        rep.empirical = c.empirical;
        rep.reference = c.reference;
        rep.sigma = c.sigma;
      }
      rep.classes.push_back(std::move(c));
    }
    if (!exhaustive) rep.within_band = in_band;
    break;
  }
  case Claim::coset_half: {
    TorusSetup setup(spec);
    QuotientContext quotient(*setup.group, setup.config.centrality_trials);
    CentralizerSampler normalizer(*setup.group, setup.fg.e1, quotient, setup.rng);
    std::uint64_t outside = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      outside += outside_torus(*setup.group, normalizer.next(), setup.fg) ? 1 : 0;
    }
    rep.empirical = static_cast<double>(outside) / static_cast<double>(samples);
    rep.reference = 0.5;
    rep.provenance = "stated_constant";
    rep.sigma = deviation_sigma(rep.empirical, rep.reference, samples);
    break;
  }
  case Claim::sylow_rate: {
    TorusSetup setup(spec);
    ExactEquality exact(*setup.group);
    CentralizerSampler torus(*setup.group, setup.fg.e1, exact, setup.rng);
    const SylowData sylow = SylowData::for_order(q);
    std::uint64_t successes = 0;
    // Failures before each success, for the 1 - (5/8)^n tail.
    std::vector<std::uint64_t> waits;
    std::uint64_t streak = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      if (sylow_generator_trial(*setup.group, torus, sylow).success) {
        ++successes;
        waits.push_back(streak);
        streak = 0;
      } else {
        ++streak;
      }
    }
    rep.empirical = static_cast<double>(successes) / static_cast<double>(samples);
    rep.reference = 0.375;
    rep.provenance = "stated_constant";
    rep.sigma = deviation_sigma(rep.empirical, rep.reference, samples);
    for (unsigned j = 1; j <= 5 && !waits.empty(); ++j) {
      StatClass c;
      c.label = "P(no generators after " + std::to_string(j) + " trials)";
      const auto tail = std::count_if(waits.begin(), waits.end(), [&](auto w) { return w >= j; });
      c.empirical = static_cast<double>(tail) / static_cast<double>(waits.size());
      c.reference = std::pow(5.0 / 8.0, j);
      c.sigma = deviation_sigma(c.empirical, c.reference, waits.size());
      rep.classes.push_back(std::move(c));
    }
    break;
  }
  }
  return rep;
}

BenchTable run_bench(const std::vector<std::uint64_t> &q_list,
                     const std::vector<std::uint64_t> &seeds, const RecoveryConfig &base,
                     unsigned threads) {
  if (q_list.empty() || seeds.empty()) throw UsageError("bench needs at least one q and one seed");
  std::vector<std::uint64_t> qs = q_list;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  std::vector<FieldParams> params;
  for (auto q : qs) params.push_back(FieldParams::for_order(q));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  struct Job {
    std::size_t row;
    std::uint64_t seed;
    bool ok = false;
    std::uint64_t queries = 0;
    double ms = 0.0;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < qs.size(); ++r) {
    for (auto s : seeds) jobs.push_back({r, s});
  }
  auto work = [&](Job &job) {
    RecoveryConfig cfg = base;
    cfg.seed = job.seed;
    ReferenceOracle oracle(params[job.row], job.seed);
    BlackBoxRing ring(oracle);
    const auto start = std::chrono::steady_clock::now();
    RecoveryResult res = recover(ring, qs[job.row], cfg);
    job.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
    job.ok = res.report.success;
    job.queries = res.report.queries.total();
  };
  for (std::size_t begin = 0; begin < jobs.size(); begin += threads) {
    std::vector<std::future<void>> batch;
    for (std::size_t i = begin; i < std::min(jobs.size(), begin + threads); ++i) {
      batch.push_back(std::async(std::launch::async, work, std::ref(jobs[i])));
    }
    for (auto &f : batch) f.get();
  }

  BenchTable table;
  for (std::size_t r = 0; r < qs.size(); ++r) {
    BenchRow row;
    row.q = qs[r];
    std::vector<double> queries, ms;
    for (const auto &job : jobs) {
      if (job.row != r) continue;
      ++row.runs;
      if (!job.ok) {
        ++row.failures;
        continue;
      }
      queries.push_back(static_cast<double>(job.queries));
      ms.push_back(job.ms);
    }
    row.median_queries = static_cast<std::uint64_t>(std::llround(median(queries)));
    row.median_ms = median(ms);
    table.rows.push_back(row);
  }
  const double log_min = std::log2(static_cast<double>(table.rows.front().q));
  table.constant = static_cast<double>(table.rows.front().median_queries) / std::pow(log_min, 3);
  for (auto &row : table.rows) {
    row.bound = table.constant * std::pow(std::log2(static_cast<double>(row.q)), 3);
    row.within_bound = row.failures < row.runs &&
                       static_cast<double>(row.median_queries) <= row.bound * (1.0 + 1e-12);
  }
  return table;
}

FieldMatch explicit_field_match(const StructuralProxy &proxy,
                                const FieldParams &params, std::uint64_t seed) {
  const std::uint64_t q = params.q;
  if (q > kMaxFieldMatchOrder) {
    throw UsageError("explicit field matching is brute force and limited to q <= " +
                     std::to_string(kMaxFieldMatchOrder) +
                     "; the general polynomial-time isomorphism is not implemented");
  }
  const BlackBoxField &z = proxy.field_view;
  if (z.order() != q) throw UsageError("proxy and field parameters disagree on q");
  const Field field(params);
  const std::uint64_t p = params.p;

  std::vector<Cryptoelement> prime(p);
  prime[0] = z.zero();
  for (std::uint64_t n = 1; n < p; ++n) prime[n] = z.add(prime[n - 1], z.one());

  Cryptoelement theta = prime[0];
  if (params.m > 1) {
    // A primitive element of Z, then a root of the defining polynomial among its powers.
    const auto order_factors = factorize(q - 1);
    std::optional<Cryptoelement> gamma;
    for (unsigned attempt = 0; attempt < 256 && !gamma; ++attempt) {
      Cryptoelement c = z.random_unit();
      bool primitive = true;
      for (auto [r, mult] : order_factors) {
        if (z.eq(z.pow(c, (q - 1) / r), z.one())) {
          primitive = false;
          break;
        }
      }
      if (primitive) gamma = std::move(c);
    }
    if (!gamma) throw DomainError("no primitive element of Z found");
    auto evaluate = [&](const Cryptoelement &x) {
      Cryptoelement acc = prime[params.irreducible.back()];
      for (std::size_t i = params.m; i-- > 0;) {
        acc = z.add(z.mul(acc, x), prime[params.irreducible[i]]);
      }
      return acc;
    };
    Cryptoelement power = *gamma;
    bool found = false;
    for (std::uint64_t j = 1; j < q - 1 && !found; ++j) {
      if (z.is_zero(evaluate(power))) {
        theta = power;
        found = true;
      } else {
        power = z.mul(power, *gamma);
      }
    }
    if (!found) throw DomainError("defining polynomial has no root in Z");
  } else {
    theta = z.one();
  }

  FieldMatch match;
  match.generator_image = theta;
  match.image.resize(q);
  std::vector<Cryptoelement> theta_powers{z.one()};
  for (std::size_t i = 1; i < params.m; ++i) theta_powers.push_back(z.mul(theta_powers.back(), theta));
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    const FqElement a = field.from_index(idx);
    Cryptoelement acc = prime[a.coeffs[0]];
    for (std::size_t i = 1; i < params.m; ++i) {
      if (a.coeffs[i] != 0) acc = z.add(acc, z.mul(prime[a.coeffs[i]], theta_powers[i]));
    }
    match.image[idx] = std::move(acc);
  }

  CounterRng rng(seed, q);
  for (int i = 0; i < 100; ++i) {
    const FqElement a = field.from_index(rng.below(q));
    const FqElement b = field.from_index(rng.below(q));
    const auto &ia = match.image[field.index_of(a)];
    const auto &ib = match.image[field.index_of(b)];
    if (!z.eq(match.image[field.index_of(field.add(a, b))], z.add(ia, ib)) ||
        !z.eq(match.image[field.index_of(field.mul(a, b))], z.mul(ia, ib))) {
      throw DomainError("matched field map is not a homomorphism");
    }
  }
  return match;
}

} // namespace bbring
