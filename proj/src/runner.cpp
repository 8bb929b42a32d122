#include "faasbench/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <utility>

#include "faasbench/errors.hpp"
#include "faasbench/live.hpp"

namespace faasbench {

int default_workers(TestKind kind) {
  switch (kind) {
    case TestKind::overhead:
    case TestKind::intensive:
    case TestKind::payload:
      return 1;
    case TestKind::scalability:
    case TestKind::workflow:
      return kMaxWorkers;
  }
  throw ConfigError("unknown test kind");
}

namespace {

TestPlan plan_for(const RunConfig& cfg) {
  auto overrides = cfg.plan_overrides;
  if (cfg.test == TestKind::intensive && !overrides.count("payload_kb"))
    overrides["payload_kb"] = std::to_string(cfg.model.intensive_payload_kb);
  return build_plan(cfg.test, overrides, cfg.force);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

RunOutput execute_run(const RunConfig& cfg) {
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  RunOutput out;
  out.plan = plan_for(cfg);
  Topology topo =
      build_topology(cfg.profile, cfg.workers.value_or(default_workers(cfg.test)));
  ScenarioSpec spec = derive_scenario(cfg.scenario, cfg.wan_base);

  double steady_sum = 0.0;
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    std::vector<RequestRecord> records;
    if (cfg.gateway) {
      records = execute_plan_live(*cfg.gateway, out.plan, cfg.model.timeout_ms,
                                  to_string(cfg.scenario), to_string(cfg.profile));
    } else {
      records = run_sim(out.plan, spec, topo, cfg.model, cfg.seed + rep);
    }
    steady_sum += steady_state_rps(throughput_series(records, out.plan.duration_ms));
    for (auto& r : records) r.thread += rep * out.plan.threads;
    out.records.insert(out.records.end(),
                       std::make_move_iterator(records.begin()),
                       std::make_move_iterator(records.end()));
  }
  out.stats = summarize(out.records, out.plan.duration_ms);
  out.steady_rps = steady_sum / cfg.repetitions;
  return out;
}

RunOutput run_and_write(const RunConfig& cfg) {
  RunOutput out = execute_run(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + cfg.out_dir);

  std::string base = to_string(cfg.test) + "_" + to_string(cfg.scenario) + "_" +
                     to_string(cfg.profile);
  out.csv_path =
      (std::filesystem::path(cfg.out_dir) / (base + "_records.csv")).string();
  out.summary_path =
      (std::filesystem::path(cfg.out_dir) / (base + "_summary.json")).string();
  export_records(out.records, out.csv_path);
  write_text(out.summary_path,
             summary_json_line(to_string(cfg.test), to_string(cfg.scenario),
                               to_string(cfg.profile), out.stats, out.steady_rps));
  return out;
}

std::string netem_plan_text(const ScenarioSpec& scenario, const std::string& iface) {
  std::string text;
  auto adds = emit_netem_commands(scenario, iface);
  for (const auto& line : adds) text += line + "\n";
  if (!adds.empty()) text += "tc qdisc del dev " + iface + " root\n";
  return text;
}

SweepResult run_sweep(const RunConfig& base,
                      const std::vector<std::string>& tests,
                      const std::vector<std::string>& scenarios,
                      const std::vector<std::string>& profiles) {
  if (tests.empty() || scenarios.empty() || profiles.empty())
    throw ConfigError("sweep grid is empty");

  SweepResult result;
  // Unknown scenario names have no column; report them once up front.
  std::vector<std::pair<std::string, std::optional<ScenarioName>>> cols;
  for (const auto& s : scenarios) {
    std::optional<ScenarioName> parsed;
    try {
      parsed = scenario_from_string(s);
    } catch (const std::exception& e) {
      result.failures.push_back("scenario " + s + ": " + e.what());
    }
    cols.push_back({s, parsed});
  }

  std::vector<TableRow> rows;
  for (const auto& test : tests) {
    for (const auto& profile : profiles) {
      TableRow row;
      row.first = test + " " + profile;
      bool row_valid = true;
      try {
        test_kind_from_string(test);
        profile_from_string(profile);
      } catch (const std::exception& e) {
        result.failures.push_back(row.first + ": " + e.what());
        row_valid = false;
      }
      for (const auto& [sname, scenario] : cols) {
        if (!row_valid || !scenario) continue;
        size_t column = 0;
        for (; column < all_scenarios().size(); ++column)
          if (all_scenarios()[column] == *scenario) break;
        try {
          RunConfig cell = base;
          cell.test = test_kind_from_string(test);
          cell.profile = profile_from_string(profile);
          cell.scenario = *scenario;
          RunOutput out = run_and_write(cell);
          row.second[column] = {out.stats.median_ms, out.stats.iqr_ms};
          result.summary_ndjson +=
              summary_json_line(test, sname, profile, out.stats, out.steady_rps);
        } catch (const std::exception& e) {
          result.failures.push_back(row.first + " " + sname + ": " + e.what());
        }
      }
      rows.push_back(std::move(row));
    }
  }
  result.table = render_table(rows);

  std::error_code ec;
  std::filesystem::create_directories(base.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + base.out_dir);
  write_text((std::filesystem::path(base.out_dir) / "sweep_table.txt").string(),
             result.table);
  write_text((std::filesystem::path(base.out_dir) / "sweep_summary.json").string(),
             result.summary_ndjson);
  return result;
}

}  // namespace faasbench
