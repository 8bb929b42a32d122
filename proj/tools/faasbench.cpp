#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faasbench/calibrate.hpp"
#include "faasbench/errors.hpp"
#include "faasbench/runner.hpp"

namespace {

using namespace faasbench;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  for (char c : csv) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

// Everything the run-like subcommands share. Values only take effect when
// the flag (or config file) provided them; precedence is defaults, then
// file, then flags.
struct CommonArgs {
  std::string test = "overhead";
  std::string scenario;
  std::string profile;
  int workers = 0;
  int64_t payload_kb = 0;
  int fib_n = 0;
  int threads = 0;
  int chain_len = 0;
  std::string chain_mode;
  double pacing_ms = 0;
  int64_t requests = 0;
  double duration_ms = 0;
  std::string gateway;
  double timeout_ms = 0;
  uint64_t seed = 42;
  int reps = 10;
  std::string out_dir = "./results";
  std::string config_path;
  bool force = false;
};

void add_common_options(CLI::App* sub, CommonArgs& a, bool with_test) {
  if (with_test)
    sub->add_option("--test", a.test,
                    "overhead|intensive|payload|scalability|workflow");
  sub->add_option("--scenario", a.scenario, "loc|cld|ewst|etyp|eopt");
  sub->add_option("--profile", a.profile, "rp.metal|vm.small|vm.medium|vm.large");
  sub->add_option("--workers", a.workers, "worker node count (1-3)");
  sub->add_option("--payload-kb", a.payload_kb, "request payload size in KB");
  sub->add_option("--fib-n", a.fib_n, "fib argument for the recursive function");
  sub->add_option("--threads", a.threads, "concurrent client threads");
  sub->add_option("--chain-len", a.chain_len, "function chain length");
  sub->add_option("--chain-mode", a.chain_mode, "client|server");
  sub->add_option("--pacing-ms", a.pacing_ms, "per-thread pacing interval");
  sub->add_option("--requests", a.requests, "total requests (0: duration-driven)");
  sub->add_option("--duration-ms", a.duration_ms, "run duration when duration-driven");
  sub->add_option("--timeout-ms", a.timeout_ms, "per-request timeout");
  sub->add_option("--seed", a.seed, "base RNG seed")->envname("FAASBENCH_SEED");
  sub->add_option("--reps", a.reps, "repetitions pooled into one summary");
  sub->add_option("--out-dir", a.out_dir, "output directory");
  sub->add_option("--config", a.config_path, "key = value config file");
  sub->add_flag("--force", a.force, "lift guard-rail validations");
}

// Builds the RunConfig honoring defaults < config file < explicit flags.
RunConfig make_run_config(const CLI::App* sub, const CommonArgs& a) {
  ModelConfig model;
  FileSettings file;
  if (!a.config_path.empty())
    apply_config(model, file, parse_config_file(a.config_path));

  RunConfig cfg;
  cfg.model = model;
  if (file.wan_latency_ms) cfg.wan_base.latency_ms = *file.wan_latency_ms;
  if (file.wan_jitter_ms) cfg.wan_base.jitter_ms = *file.wan_jitter_ms;
  if (file.wan_loss_pct) cfg.wan_base.loss_pct = *file.wan_loss_pct;

  cfg.test = test_kind_from_string(a.test);
  if (sub->count("--scenario"))
    cfg.scenario = scenario_from_string(a.scenario);
  else if (file.scenario_name)
    cfg.scenario = scenario_from_string(*file.scenario_name);
  if (sub->count("--profile"))
    cfg.profile = profile_from_string(a.profile);
  else if (file.profile)
    cfg.profile = profile_from_string(*file.profile);
  if (sub->count("--workers"))
    cfg.workers = a.workers;
  else if (file.workers)
    cfg.workers = *file.workers;

  cfg.seed = a.seed;
  cfg.repetitions = a.reps;
  cfg.out_dir = a.out_dir;
  cfg.force = a.force;
  if (sub->count("--timeout-ms")) {
    if (!(a.timeout_ms > 0)) throw ConfigError("--timeout-ms must be positive");
    cfg.model.timeout_ms = a.timeout_ms;
  }

  auto& ov = cfg.plan_overrides;
  if (sub->count("--payload-kb")) ov["payload_kb"] = std::to_string(a.payload_kb);
  if (sub->count("--fib-n")) ov["fib_n"] = std::to_string(a.fib_n);
  if (sub->count("--threads")) ov["threads"] = std::to_string(a.threads);
  if (sub->count("--chain-len")) ov["chain_len"] = std::to_string(a.chain_len);
  if (sub->count("--chain-mode")) ov["chain_mode"] = a.chain_mode;
  if (sub->count("--pacing-ms")) ov["pacing_ms"] = format_double(a.pacing_ms);
  if (sub->count("--requests")) ov["total_requests"] = std::to_string(a.requests);
  if (sub->count("--duration-ms")) ov["duration_ms"] = format_double(a.duration_ms);
  return cfg;
}

int do_run(const CLI::App* sub, const CommonArgs& a, bool live) {
  RunConfig cfg = make_run_config(sub, a);
  if (sub->count("--gateway")) cfg.gateway = a.gateway;
  if (live && !cfg.gateway)
    throw ConfigError("live requires --gateway <url>");
  RunOutput out = run_and_write(cfg);
  std::cout << summary_json_line(to_string(cfg.test), to_string(cfg.scenario),
                                 to_string(cfg.profile), out.stats, out.steady_rps);
  std::cout << "records: " << out.csv_path << "\n";
  std::cout << "summary: " << out.summary_path << "\n";
  return 0;
}

int do_sweep(const CLI::App* sub, const CommonArgs& a, const std::string& tests,
             const std::string& scenarios, const std::string& profiles) {
  RunConfig cfg = make_run_config(sub, a);
  auto t = split_list(tests);
  auto s = split_list(scenarios);
  auto p = split_list(profiles);
  SweepResult result = run_sweep(cfg, t, s, p);
  std::cout << result.table;
  for (const auto& f : result.failures) std::cerr << "cell failed: " << f << "\n";
  return result.failures.empty() ? 0 : 1;
}

int do_calibrate(const CommonArgs& a, const std::string& reference,
                 const std::string& out_name) {
  ModelConfig model;
  FileSettings file;
  if (!a.config_path.empty())
    apply_config(model, file, parse_config_file(a.config_path));
  CalibrationResult result = calibrate_from_reference(reference, model);

  std::filesystem::path out_path(out_name);
  if (out_path.is_relative()) out_path = std::filesystem::path(a.out_dir) / out_path;
  std::error_code ec;
  std::filesystem::create_directories(out_path.parent_path(), ec);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + out_path.string());
  out << result.config_text;
  if (!out) throw IoError("write failed: " + out_path.string());
  for (const auto& line : result.residual_lines) std::cout << line << "\n";
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

int do_netem(const CommonArgs& a, const std::string& scenario,
             const std::string& iface) {
  ModelConfig model;
  FileSettings file;
  if (!a.config_path.empty())
    apply_config(model, file, parse_config_file(a.config_path));
  WanBase base;
  if (file.wan_latency_ms) base.latency_ms = *file.wan_latency_ms;
  if (file.wan_jitter_ms) base.jitter_ms = *file.wan_jitter_ms;
  if (file.wan_loss_pct) base.loss_pct = *file.wan_loss_pct;
  ScenarioSpec spec = derive_scenario(scenario_from_string(scenario), base);
  std::cout << netem_plan_text(spec, iface);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"function benchmark harness with a deterministic testbed simulator"};
  app.require_subcommand(1);

  CommonArgs run_args, sweep_args, live_args, cal_args, netem_args;

  CLI::App* run = app.add_subcommand("run", "run one benchmark cell");
  add_common_options(run, run_args, true);
  run->add_option("--gateway", run_args.gateway,
                  "drive this real gateway URL instead of the simulator");

  CLI::App* sweep = app.add_subcommand("sweep", "run a scenario x profile grid");
  add_common_options(sweep, sweep_args, false);
  std::string sweep_tests = "overhead";
  std::string sweep_scenarios = "loc,cld,ewst,etyp,eopt";
  std::string sweep_profiles = "rp.metal,vm.large";
  sweep->add_option("--tests", sweep_tests, "comma-separated test kinds");
  sweep->add_option("--scenarios", sweep_scenarios, "comma-separated scenarios");
  sweep->add_option("--profiles", sweep_profiles, "comma-separated profiles");

  CLI::App* cal = app.add_subcommand("calibrate",
                                     "fit service constants from reference medians");
  std::string reference;
  std::string cal_out = "calibrated.conf";
  cal->add_option("--reference", reference, "reference medians JSON")->required();
  cal->add_option("--out", cal_out, "output config file (relative to --out-dir)");
  cal->add_option("--out-dir", cal_args.out_dir, "output directory");
  cal->add_option("--config", cal_args.config_path, "key = value config file");

  CLI::App* netem = app.add_subcommand("netem", "print the tc commands for a scenario");
  std::string netem_scenario;
  std::string iface = "nebula1";
  netem->add_option("--scenario", netem_scenario, "loc|cld|ewst|etyp|eopt")->required();
  netem->add_option("--iface", iface, "network interface");
  netem->add_option("--config", netem_args.config_path, "key = value config file");

  CLI::App* live = app.add_subcommand("live", "run against a real gateway");
  add_common_options(live, live_args, true);
  live->add_option("--gateway", live_args.gateway, "gateway base URL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return do_run(run, run_args, false);
    if (sweep->parsed())
      return do_sweep(sweep, sweep_args, sweep_tests, sweep_scenarios,
                      sweep_profiles);
    if (cal->parsed()) return do_calibrate(cal_args, reference, cal_out);
    if (netem->parsed()) return do_netem(netem_args, netem_scenario, iface);
    if (live->parsed()) return do_run(live, live_args, true);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
