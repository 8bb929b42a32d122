#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "faasbench/errors.hpp"
#include "faasbench/runner.hpp"

using namespace faasbench;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "faasbench-runner-test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("per-test worker defaults") {
  CHECK(default_workers(TestKind::overhead) == 1);
  CHECK(default_workers(TestKind::intensive) == 1);
  CHECK(default_workers(TestKind::payload) == 1);
  CHECK(default_workers(TestKind::scalability) == 3);
  CHECK(default_workers(TestKind::workflow) == 3);
}

TEST_CASE("repetitions pool with offset thread ids and averaged steady rate") {
  RunConfig cfg;
  cfg.test = TestKind::overhead;
  cfg.scenario = ScenarioName::loc;
  cfg.profile = NodeProfile::vm_large;
  cfg.seed = 9;
  cfg.repetitions = 3;
  cfg.plan_overrides = {{"threads", "2"}, {"total_requests", "10"}};

  RunOutput out = execute_run(cfg);
  CHECK(out.records.size() == 30);
  std::set<int> threads;
  for (const auto& r : out.records) threads.insert(r.thread);
  CHECK(threads == std::set<int>{0, 1, 2, 3, 4, 5});
  CHECK(out.stats.count == 30);
  CHECK(out.stats.success_count == 30);

  // the pooled steady rate is the mean of the per-repetition rates
  double expect = 0.0;
  auto plan = build_plan(TestKind::overhead,
                         {{"threads", "2"}, {"total_requests", "10"}});
  for (int rep = 0; rep < 3; ++rep) {
    auto records = run_sim(plan, derive_scenario(ScenarioName::loc),
                           build_topology(NodeProfile::vm_large, 1), cfg.model,
                           cfg.seed + rep);
    expect += steady_state_rps(throughput_series(records, plan.duration_ms));
  }
  CHECK(out.steady_rps == doctest::Approx(expect / 3.0).epsilon(1e-12));
}

TEST_CASE("identical configs write identical bytes") {
  RunConfig cfg;
  cfg.test = TestKind::payload;
  cfg.scenario = ScenarioName::etyp;
  cfg.profile = NodeProfile::rp_metal;
  cfg.seed = 1;
  cfg.repetitions = 2;
  cfg.plan_overrides = {{"total_requests", "20"}};

  auto dir_a = fresh_dir("bytes-a");
  auto dir_b = fresh_dir("bytes-b");
  cfg.out_dir = dir_a.string();
  RunOutput a = run_and_write(cfg);
  cfg.out_dir = dir_b.string();
  RunOutput b = run_and_write(cfg);

  CHECK(slurp(a.csv_path) == slurp(b.csv_path));
  CHECK(slurp(a.summary_path) == slurp(b.summary_path));
  CHECK(a.csv_path.find("payload_etyp_rp.metal_records.csv") != std::string::npos);
  CHECK(!slurp(a.csv_path).empty());

  // a different seed must change the records
  cfg.seed = 2;
  cfg.out_dir = fresh_dir("bytes-c").string();
  RunOutput c = run_and_write(cfg);
  CHECK(slurp(a.csv_path) != slurp(c.csv_path));
}

TEST_CASE("the intensive payload default follows the model setting") {
  RunConfig cfg;
  cfg.test = TestKind::intensive;
  cfg.repetitions = 1;
  cfg.plan_overrides = {{"total_requests", "1"}};
  RunOutput out = execute_run(cfg);
  CHECK(out.plan.payload_kb == 20);

  cfg.model.intensive_payload_kb = 100;
  out = execute_run(cfg);
  CHECK(out.plan.payload_kb == 100);

  cfg.plan_overrides["payload_kb"] = "5";
  out = execute_run(cfg);
  CHECK(out.plan.payload_kb == 5);
}

TEST_CASE("sweeps fill the grid and survive broken cells") {
  RunConfig base;
  base.repetitions = 1;
  base.seed = 3;
  base.plan_overrides = {{"total_requests", "10"}};
  base.out_dir = fresh_dir("sweep").string();

  auto result = run_sweep(base, {"overhead"}, {"loc", "cld"},
                          {"vm.large", "vm.huge"});
  // the healthy row has both cells, the broken profile renders n/a
  CHECK(result.table.find("overhead vm.large") != std::string::npos);
  CHECK(result.table.find("overhead vm.huge") != std::string::npos);
  CHECK(result.table.find("n/a") != std::string::npos);
  REQUIRE(result.failures.size() == 1);
  CHECK(result.failures[0].find("vm.huge") != std::string::npos);

  // two healthy cells -> two summary lines
  int lines = 0;
  for (char c : result.summary_ndjson)
    if (c == '\n') ++lines;
  CHECK(lines == 2);

  CHECK(std::filesystem::exists(std::filesystem::path(base.out_dir) /
                                "sweep_table.txt"));
  CHECK(std::filesystem::exists(std::filesystem::path(base.out_dir) /
                                "sweep_summary.json"));
  CHECK(slurp((std::filesystem::path(base.out_dir) / "sweep_table.txt").string()) ==
        result.table);

  CHECK_THROWS_AS(run_sweep(base, {}, {"loc"}, {"vm.large"}), ConfigError);
  auto bad_scenario = run_sweep(base, {"overhead"}, {"nowhere"}, {"vm.large"});
  CHECK(!bad_scenario.failures.empty());
}

TEST_CASE("unwritable output directories are io errors") {
  RunConfig cfg;
  cfg.repetitions = 1;
  cfg.plan_overrides = {{"total_requests", "1"}};
  cfg.out_dir = "/proc/faasbench-cannot-write-here";
  CHECK_THROWS_AS(run_and_write(cfg), IoError);
}

TEST_CASE("repetitions below one are rejected") {
  RunConfig cfg;
  cfg.repetitions = 0;
  CHECK_THROWS_AS(execute_run(cfg), ConfigError);
}
