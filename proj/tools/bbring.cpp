// Command-line driver: recover, verify, stats and bench against the reference oracle.

#include "bbring/errors.hpp"
#include "bbring/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace bbring;

std::vector<std::uint64_t> parse_csv(const std::string &text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw UsageError("cannot parse integer list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

struct FieldOptions {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  std::size_t m = 0;
  std::string irr;

  FieldParams resolve() const {
    FieldParams params;
    if (p != 0) {
      std::string text = "p=" + std::to_string(p) + ",m=" + std::to_string(m ? m : 1);
      if (!irr.empty()) text += ",irr=" + irr;
      params = FieldParams::parse(text);
      if (q != 0 && params.q != q) throw UsageError("--q disagrees with --p/--m");
    } else {
      params = FieldParams::for_order(q);
    }
    return params;
  }
};

void add_field_options(CLI::App *cmd, FieldOptions &f, bool explicit_field) {
  cmd->add_option("--q", f.q, "Field order (odd prime power <= 2^20)")->required(!explicit_field);
  if (explicit_field) {
    cmd->add_option("--p", f.p, "Characteristic");
    cmd->add_option("--m", f.m, "Extension degree");
    cmd->add_option("--irr", f.irr, "Defining polynomial, constant coefficient first (csv)");
  }
}

void write_output(const std::string &text, const std::string &path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Structure recovery for black box rings encrypting 2x2 matrices over F_q"};
  app.require_subcommand(1);

  FieldOptions field;
  std::uint64_t seed = 1;
  std::string out_path;
  bool timings = false;
  RecoveryConfig config;

  auto add_config = [&](CLI::App *cmd) {
    cmd->add_option("--seed", seed, "Seed for the oracle and the recovery")->required();
    cmd->add_option("--max-retries", config.max_retries_per_step, "Retry budget per step");
    cmd->add_option("--centrality-trials", config.centrality_trials, "Witnesses for centrality");
    cmd->add_option("--generator-trials", config.generator_trials, "Sylow generator trials");
    cmd->add_option("--samples-iso", config.homomorphism_sample_size,
                    "Random pairs for the isomorphism checks");
    cmd->add_flag("--timings", timings, "Write wall-clock milliseconds into the report");
  };

  auto *recover_cmd = app.add_subcommand("recover", "Recover the structural proxy and report");
  add_field_options(recover_cmd, field, true);
  add_config(recover_cmd);
  recover_cmd->add_option("--out", out_path, "Report path (default stdout)");

  auto *verify_cmd = app.add_subcommand("verify", "Recover and run the full invariant suite");
  add_field_options(verify_cmd, field, false);
  add_config(verify_cmd);
  verify_cmd->add_option("--out", out_path, "Report path (default stdout)");

  std::string claim_name;
  std::uint64_t samples = 0;
  auto *stats_cmd = app.add_subcommand("stats", "Sampling experiment for one probability claim");
  stats_cmd->add_option("--claim", claim_name, "invertibility|scalar_distribution|coset_half|sylow_rate")
      ->required();
  add_field_options(stats_cmd, field, false);
  stats_cmd->add_option("--samples", samples, "Number of draws (default per claim)");
  stats_cmd->add_option("--seed", seed, "Seed")->required();
  stats_cmd->add_option("--out", out_path, "Report path (default stdout)");

  std::string q_list, seed_list;
  unsigned threads = 0;
  auto *bench_cmd = app.add_subcommand("bench", "Median oracle queries and time across q");
  bench_cmd->add_option("--q-list", q_list, "Comma-separated field orders")->required();
  bench_cmd->add_option("--seeds", seed_list, "Comma-separated seeds")->required();
  bench_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bench_cmd->add_option("--out", out_path, "Table path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bench_cmd) {
      const auto qs = parse_csv(q_list);
      const auto seeds = parse_csv(seed_list);
      for (auto q : qs) FieldParams::for_order(q);
      const BenchTable table = run_bench(qs, seeds, config, threads);
      write_output(bench_to_text(table, seeds), out_path);
      for (const auto &row : table.rows) {
        if (!row.within_bound) return kExitVerificationFailure;
      }
      return kExitPass;
    }

    RunSpec spec;
    spec.params = field.resolve();
    spec.seed = seed;
    spec.config = config;
    spec.config.seed = seed;
    spec.timings = timings;
    spec.validate();

    if (*stats_cmd) {
      spec.mode = RunMode::stats;
      const Claim claim = parse_claim(claim_name);
      RunOutcome outcome;
      outcome.report.q = spec.params.q;
      outcome.report.seed = seed;
      outcome.report.success = true;
      outcome.stats = run_stats(spec, claim, samples ? samples : default_samples(claim));
      write_output(report_to_text(spec, outcome), out_path);
      return kExitPass;
    }

    spec.mode = *verify_cmd ? RunMode::verify : RunMode::recover;
    const RunOutcome outcome = run_recover(spec);
    write_output(report_to_text(spec, outcome), out_path);
    return outcome.exit_code;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRecoveryFailure;
  }
}
