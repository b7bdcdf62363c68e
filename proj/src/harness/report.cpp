#include "bbring/harness.hpp"

#include "json.hpp"

namespace bbring {

namespace {

using Json = nlohmann::ordered_json;

Json queries_json(const QueryCounts &c) {
  return Json{{"random", c.random}, {"add", c.add}, {"neg", c.neg}, {"mul", c.mul}, {"eq", c.eq}};
}

Json stats_json(const StatReport &s) {
  Json j{{"claim", std::string(to_string(s.claim))},
         {"q", s.q},
         {"n", s.n},
         {"empirical", s.empirical},
         {"reference", s.reference},
         {"provenance", s.provenance},
         {"sigma", s.sigma}};
  if (s.within_band) j["within_band"] = *s.within_band;
  if (!s.classes.empty()) {
    Json classes = Json::array();
    for (const auto &c : s.classes) {
      classes.push_back(Json{{"label", c.label},
                             {"empirical", c.empirical},
                             {"reference", c.reference},
                             {"sigma", c.sigma}});
    }
    j["classes"] = std::move(classes);
  }
  return j;
}

} // namespace

std::string report_to_text(const RunSpec &spec, const RunOutcome &outcome) {
  const RecoveryReport &r = outcome.report;
  Json doc;
  doc["run"] = Json{{"q", spec.params.q},
                    {"p", spec.params.p},
                    {"m", spec.params.m},
                    {"seed", spec.seed},
                    {"mode", std::string(to_string(spec.mode))}};
  Json result{{"success", r.success}};
  if (r.failing_step) result["failing_step"] = *r.failing_step;
  doc["result"] = std::move(result);
  doc["queries"] = queries_json(r.queries);
  Json steps = Json::array();
  for (const auto &s : r.steps) {
    Json step{{"name", s.name}, {"retries", s.retries}, {"queries", s.queries.total()}};
    step["ms"] = spec.timings ? Json(s.milliseconds) : Json(nullptr);
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  Json checks = Json::array();
  for (const auto &c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}});
  doc["checks"] = std::move(checks);
  if (outcome.stats) doc["stats"] = stats_json(*outcome.stats);
  return doc.dump(2) + "\n";
}

std::string bench_to_text(const BenchTable &table, const std::vector<std::uint64_t> &seeds) {
  Json doc;
  doc["mode"] = "bench";
  doc["seeds"] = seeds;
  doc["constant"] = table.constant;
  Json rows = Json::array();
  for (const auto &row : table.rows) {
    rows.push_back(Json{{"q", row.q},
                        {"runs", row.runs},
                        {"failures", row.failures},
                        {"median_queries", row.median_queries},
                        {"median_ms", row.median_ms},
                        {"bound", row.bound},
                        {"within_bound", row.within_bound}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

} // namespace bbring
