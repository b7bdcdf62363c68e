#pragma once

// Drivers around the recovery pipeline: end-to-end runs against the reference
// oracle, sampling experiments for the probability estimates, query-count
// benchmarks, and a brute-force explicit field matcher for small q.

#include "bbring/field.hpp"
#include "bbring/recovery.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bbring {

enum class RunMode { recover, verify, stats, bench };
std::string_view to_string(RunMode mode) noexcept;

enum class Claim { invertibility, scalar_distribution, coset_half, sylow_rate };
std::string_view to_string(Claim claim) noexcept;
/// Throws UsageError on unknown names.
Claim parse_claim(std::string_view name);

struct RunSpec {
  FieldParams params;
  std::uint64_t seed = 1;
  RecoveryConfig config;
  RunMode mode = RunMode::recover;
  /// Wall-clock fields are written only when set; reports are byte-identical otherwise.
  bool timings = false;

  /// Throws UsageError unless q is odd and within the supported bound.
  void validate() const;
};

/// Default sample sizes per claim.
std::uint64_t default_samples(Claim claim) noexcept;

/// One class of a multi-class comparison (per scalar value, per streak length).
struct StatClass {
  std::string label;
  double empirical = 0.0;
  double reference = 0.0;
  double sigma = 0.0;
};

struct StatReport {
  Claim claim = Claim::invertibility;
  std::uint64_t q = 0;
  std::uint64_t n = 0;
  double empirical = 0.0;
  double reference = 0.0;
  /// "closed_form", "exhaustive_oracle", "stated_constant" or "asymptotic_band".
  std::string provenance;
  /// |empirical - reference| in standard errors of the reference proportion.
  double sigma = 0.0;
  /// For multi-class claims the headline fields describe the worst class.
  std::vector<StatClass> classes;
  /// Set for the q > 9 scalar distribution: every nonzero class inside 1/q +- 3/q^2.
  std::optional<bool> within_band;
};

/// |empirical - reference| / sqrt(reference (1 - reference) / n).
double deviation_sigma(double empirical, double reference, std::uint64_t n) noexcept;

struct RunOutcome {
  RecoveryReport report;
  std::optional<StatReport> stats;
  /// 0 pass, 1 verification failure, 2 recovery failure.
  int exit_code = 0;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitRecoveryFailure = 2;
inline constexpr int kExitUsage = 3;

/// Builds a reference oracle for (params, seed), recovers, runs the invariant suite.
RunOutcome run_recover(const RunSpec &spec);

/// Runs the sampling experiment for `claim` with `samples` draws.
StatReport run_stats(const RunSpec &spec, Claim claim, std::uint64_t samples);

struct BenchRow {
  std::uint64_t q = 0;
  std::uint64_t median_queries = 0;
  double median_ms = 0.0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  /// C (log2 q)^3 with C calibrated at the smallest q.
  double bound = 0.0;
  bool within_bound = false;
};

struct BenchTable {
  double constant = 0.0;
  std::vector<BenchRow> rows;
};

/// Recovery only (no invariant suite) for every (q, seed); rows sorted by q.
/// Runs seeds in parallel on up to `threads` workers (0 = hardware concurrency).
BenchTable run_bench(const std::vector<std::uint64_t> &q_list,
                     const std::vector<std::uint64_t> &seeds, const RecoveryConfig &base,
                     unsigned threads = 0);

inline constexpr std::uint64_t kMaxFieldMatchOrder = 1024;

/// Explicit F_q -> Z by brute force: n -> n * one on the prime subfield, and
/// for m > 1 a root of the defining polynomial found among powers of a
/// primitive element of Z.
struct FieldMatch {
  /// image[Field::index_of(a)] encrypts the scalar matrix a I.
  std::vector<Cryptoelement> image;
  /// Image of the polynomial variable x (equals n * one images when m = 1).
  Cryptoelement generator_image;
};

/// Throws UsageError for q > kMaxFieldMatchOrder, DomainError if the matched map
/// fails the homomorphism check on 100 random pairs.
FieldMatch explicit_field_match(const StructuralProxy &proxy, const FieldParams &params,
                                std::uint64_t seed = 1);

/// Structured-text report (JSON, stable key order).
std::string report_to_text(const RunSpec &spec, const RunOutcome &outcome);
std::string bench_to_text(const BenchTable &table, const std::vector<std::uint64_t> &seeds);

} // namespace bbring
