#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faasbench/cluster.hpp"
#include "faasbench/config.hpp"
#include "faasbench/metrics.hpp"

namespace faasbench {

// Single-node tests run against one worker; the distributed ones use the
// full cluster.
int default_workers(TestKind kind);

struct RunConfig {
  TestKind test = TestKind::overhead;
  ScenarioName scenario = ScenarioName::loc;
  NodeProfile profile = NodeProfile::rp_metal;
  std::optional<int> workers;  // empty picks the per-test default
  uint64_t seed = 42;
  int repetitions = 10;
  std::string out_dir = "./results";
  bool force = false;
  std::map<std::string, std::string> plan_overrides;
  std::optional<std::string> gateway;  // set: drive a real endpoint instead
  ModelConfig model;
  WanBase wan_base;
};

struct RunOutput {
  TestPlan plan;
  std::vector<RequestRecord> records;  // all repetitions pooled
  SummaryStats stats;                  // over the pooled records
  double steady_rps = 0.0;             // per-repetition rates, averaged
  std::string csv_path;
  std::string summary_path;
};

// Runs `repetitions` independent passes on consecutive seeds and pools the
// records, offsetting thread ids so every (thread, seq) stays unique.
// No file output.
RunOutput execute_run(const RunConfig& cfg);

// execute_run plus a records CSV and a one-line summary JSON in out_dir,
// named <test>_<scenario>_<profile>_{records.csv,summary.json}.
RunOutput run_and_write(const RunConfig& cfg);

// The install commands for a scenario plus one teardown line when anything
// was installed. Empty for an unemulated scenario.
std::string netem_plan_text(const ScenarioSpec& scenario,
                            const std::string& iface);

struct SweepResult {
  std::string table;           // scenario-column grid, one row per test x profile
  std::string summary_ndjson;  // one summary line per completed cell
  std::vector<std::string> failures;  // "cell: message" per failed cell
};

// Runs the full grid, writing per-cell outputs plus sweep_table.txt and
// sweep_summary.json. Grid entries are parsed per cell: an unknown name or
// a failing cell renders as n/a and is reported in `failures` instead of
// aborting the rest.
SweepResult run_sweep(const RunConfig& base,
                      const std::vector<std::string>& tests,
                      const std::vector<std::string>& scenarios,
                      const std::vector<std::string>& profiles);

}  // namespace faasbench
