// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "bbring/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace bbring;

namespace {

int failures = 0;

void verdict(int id, bool pass, const std::string &detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

RunSpec spec_for(std::uint64_t q, std::uint64_t seed, RunMode mode = RunMode::recover) {
  RunSpec spec;
  spec.params = FieldParams::for_order(q);
  spec.seed = seed;
  spec.mode = mode;
  return spec;
}

bool check_passed(const RecoveryReport &r, const std::string &name) {
  for (const auto &c : r.checks) {
    if (c.name == name) return c.pass;
  }
  return false;
}

} // namespace

int main() {
  const std::vector<std::uint64_t> orders{3, 5, 7, 9, 11, 13, 25, 27, 81, 101, 1009, 65519};
  constexpr std::uint64_t kSeeds = 10;

  // 1-4: end-to-end runs with the full invariant suite.
  std::vector<RecoveryReport> reports;
  std::map<std::uint64_t, int> successes;
  const auto start = std::chrono::steady_clock::now();
  for (auto q : orders) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      const RunOutcome out = run_recover(spec_for(q, seed));
      if (out.report.success && out.report.all_checks_pass()) ++successes[q];
      reports.push_back(out.report);
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int total_ok = 0;
  std::string missing;
  for (auto q : orders) {
    total_ok += successes[q];
    if (successes[q] != static_cast<int>(kSeeds)) missing += " q=" + std::to_string(q);
  }
  verdict(1, total_ok == static_cast<int>(orders.size() * kSeeds) && seconds < 300.0,
          std::to_string(total_ok) + "/" + std::to_string(orders.size() * kSeeds) +
              " runs recovered and verified in " + fmt("%.1f s (limit 300 s)", seconds) +
              (missing.empty() ? "" : "; failing:" + missing));

  auto all_runs = [&](std::initializer_list<const char *> names) {
    int ok = 0, considered = 0;
    for (const auto &r : reports) {
      if (!r.success && r.checks.empty()) continue;
      ++considered;
      bool pass = true;
      for (const char *n : names) pass = pass && check_passed(r, n);
      ok += pass ? 1 : 0;
    }
    return std::pair{ok, considered};
  };
  {
    const auto [ok, n] = all_runs({"matrix_units", "four_group", "conjugation_action"});
    verdict(2, n > 0 && ok == n,
            "matrix-unit relations (16 products) and four-group invariants exact on " +
                std::to_string(ok) + "/" + std::to_string(n) + " runs");
  }
  {
    const auto [ok, n] = all_runs({"coordinatize_additive", "coordinatize_multiplicative",
                                   "round_trip_ring", "round_trip_field"});
    verdict(3, n > 0 && ok == n,
            "two-way isomorphism on 1000 random pairs exact on " + std::to_string(ok) + "/" +
                std::to_string(n) + " runs");
  }
  {
    const auto [ok, n] = all_runs({"field_commutative", "field_fermat_inverse", "field_frobenius",
                                   "field_prime_subfield"});
    verdict(4, n > 0 && ok == n,
            "field checks on Z exact on " + std::to_string(ok) + "/" + std::to_string(n) +
                " runs");
  }

  // 5: invertibility rate.
  {
    bool pass = true;
    std::string detail;
    for (auto q : {5ULL, 7ULL, 13ULL}) {
      const StatReport r = run_stats(spec_for(q, 1, RunMode::stats), Claim::invertibility, 100000);
      pass = pass && r.sigma < 5.0;
      detail += fmt("q=%.0f %.4f vs %.4f", static_cast<double>(q), r.empirical, r.reference) +
                fmt(" (%.2f se); ", r.sigma);
    }
    verdict(5, pass, detail + "limit 5 se");
  }

  // 6: scalar distribution.
  {
    const StatReport r3 =
        run_stats(spec_for(3, 1, RunMode::stats), Claim::scalar_distribution, 100000);
    bool pass3 = r3.provenance == "exhaustive_oracle" && r3.classes.size() == 3;
    double worst = 0.0;
    for (const auto &c : r3.classes) {
      pass3 = pass3 && c.sigma < 5.0;
      worst = std::max(worst, c.sigma);
    }
    const StatReport r13 =
        run_stats(spec_for(13, 1, RunMode::stats), Claim::scalar_distribution, 100000);
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 1; i < r13.classes.size(); ++i) {
      lo = std::min(lo, r13.classes[i].empirical);
      hi = std::max(hi, r13.classes[i].empirical);
    }
    const double band = 3.0 / 169.0;
    const bool pass13 = r13.within_band.value_or(false) && lo >= 1.0 / 13 - band &&
                        hi <= 1.0 / 13 + band;
    verdict(6, pass3 && pass13,
            fmt("q=3 worst class %.2f se vs exhaustive table; ", worst) +
                fmt("q=13 nonzero classes in [%.4f, %.4f], band [%.4f, ", lo, hi,
                    1.0 / 13 - band) +
                fmt("%.4f]", 1.0 / 13 + band));
  }

  // 7: normalizer samples outside the torus.
  {
    const StatReport r = run_stats(spec_for(13, 1, RunMode::stats), Claim::coset_half, 2000);
    verdict(7, std::abs(r.empirical - 0.5) <= 0.05,
            fmt("q=13 fraction outside the torus %.4f (target 0.5 +- 0.05, n=2000)", r.empirical));
  }

  // 8: Sylow generator rate and failure streaks.
  {
    const StatReport r = run_stats(spec_for(13, 1, RunMode::stats), Claim::sylow_rate, 10000);
    bool tails = !r.classes.empty();
    double worst = 0.0;
    for (const auto &c : r.classes) {
      tails = tails && c.sigma < 5.0;
      worst = std::max(worst, c.sigma);
    }
    verdict(8, std::abs(r.empirical - 0.375) <= 0.02 && tails,
            fmt("q=13 per-trial rate %.4f (target 0.375 +- 0.02); ", r.empirical) +
                fmt("streak tails vs (5/8)^n worst %.2f se", worst));
  }

  // 9: query growth.
  {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= kSeeds; ++s) seeds.push_back(s);
    const std::vector<std::uint64_t> qs{13, 101, 1009, 65519};
    const BenchTable t = run_bench(qs, seeds, RecoveryConfig{});
    const double ratio = static_cast<double>(t.rows.back().median_queries) /
                         static_cast<double>(t.rows.front().median_queries);
    // Sub-polynomial: every median inside the C (log2 q)^3 envelope, and the
    // least-squares degree d of queries ~ a (log q)^d at most 3.
    bool monotone = true, envelope = true, no_failures = true;
    std::string medians;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const BenchRow &row = t.rows[i];
      no_failures = no_failures && row.failures == 0;
      envelope = envelope && row.within_bound;
      if (i > 0) monotone = monotone && row.median_queries >= t.rows[i - 1].median_queries;
      medians += std::to_string(row.q) + ":" + std::to_string(row.median_queries) + " ";
      const double x = std::log(std::log2(static_cast<double>(row.q)));
      const double y = std::log(static_cast<double>(row.median_queries));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(t.rows.size());
    const double degree = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    verdict(9, ratio <= 81.0 && monotone && envelope && degree <= 3.0 && no_failures,
            "medians " + medians + fmt("ratio %.2f (limit 81), polylog degree %.2f (limit 3)",
                                       ratio, degree) +
                (monotone ? "" : ", not monotone") + (envelope ? "" : ", outside envelope"));
  }

  // 10: determinism.
  {
    bool pass = true;
    for (auto [q, seed] : {std::pair{5ULL, 11ULL}, std::pair{27ULL, 12ULL}, std::pair{1009ULL, 13ULL}}) {
      const RunSpec spec = spec_for(q, seed);
      pass = pass && report_to_text(spec, run_recover(spec)) == report_to_text(spec, run_recover(spec));
    }
    verdict(10, pass, "byte-identical reports for 3 repeated specs");
  }

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
