#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "faasbench/config.hpp"
#include "faasbench/errors.hpp"

using namespace faasbench;

namespace {

void apply_text(ModelConfig& model, FileSettings& settings, const std::string& text) {
  apply_config(model, settings, parse_config_text(text));
}

}  // namespace

TEST_CASE("parser splits key = value and strips comments") {
  auto kv = parse_config_text(
      "# leading comment\n"
      "tcp.mss_bytes = 1200\n"
      "\n"
      "scenario.name= cld   # trailing comment\n"
      "  sim.noise_eps =0.05\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0].first == "tcp.mss_bytes");
  CHECK(kv[0].second == "1200");
  CHECK(kv[1].first == "scenario.name");
  CHECK(kv[1].second == "cld");
  CHECK(kv[2].first == "sim.noise_eps");
  CHECK(kv[2].second == "0.05");

  CHECK_THROWS_AS(parse_config_text("just-a-word\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("= value\n"), ConfigError);
}

TEST_CASE("model keys apply with range checks") {
  ModelConfig model;
  FileSettings settings;
  apply_text(model, settings,
             "tcp.mss_bytes = 1200\n"
             "tcp.init_window_segs = 4\n"
             "tcp.handshake_rounds = 1\n"
             "tcp.max_retries_per_round = 3\n"
             "autoscale.threshold = 80\n"
             "autoscale.scale_step = 2\n"
             "autoscale.reaction_ms = 2500\n"
             "autoscale.max_replicas_per_worker = 2\n"
             "service.payload-echo.vm.large.per_kb_ms = 0.2\n"
             "service.fib-go.rp.metal.per_call_ns = 99\n"
             "service.hello-world.vm.small.base_ms = 7.5\n"
             "capacity.rp.metal.gateway_rps_cap = 500\n"
             "capacity.vm.large.slots_factor = 2\n"
             "chain.server_hop_overhead_ms = 10\n"
             "test.intensive.payload_kb = 100\n"
             "infra.lan_rtt_ms = 0.5\n"
             "sim.noise_eps = 0\n"
             "sim.timeout_ms = 10000\n");
  CHECK(model.tcp.mss_bytes == 1200);
  CHECK(model.tcp.init_window_segs == 4);
  CHECK(model.tcp.handshake_rounds == 1);
  CHECK(model.tcp.max_retries_per_round == 3);
  CHECK(model.autoscale.rps_threshold_per_replica == 80.0);
  CHECK(model.autoscale.scale_step == 2);
  CHECK(model.autoscale.reaction_ms == 2500.0);
  CHECK(model.autoscale.max_replicas_per_worker == 2);
  CHECK(model.services.model(FunctionName::payload_echo, NodeProfile::vm_large)
            .per_kb_ms == 0.2);
  CHECK(model.services.model(FunctionName::fib_go, NodeProfile::rp_metal)
            .per_call_ns == 99.0);
  CHECK(model.services.model(FunctionName::hello_world, NodeProfile::vm_small)
            .base_ms == 7.5);
  CHECK(model.capacity_for(NodeProfile::rp_metal).gateway_rps_cap == 500.0);
  CHECK(model.capacity_for(NodeProfile::vm_large).slots_factor == 2.0);
  CHECK(model.server_hop_overhead_ms == 10.0);
  CHECK(model.intensive_payload_kb == 100);
  CHECK(model.lan_rtt_ms == 0.5);
  CHECK(model.noise_eps == 0.0);
  CHECK(model.timeout_ms == 10000.0);
}

TEST_CASE("settings keys apply") {
  ModelConfig model;
  FileSettings settings;
  apply_text(model, settings,
             "scenario.name = etyp\n"
             "scenario.latency_ms = 30\n"
             "scenario.jitter_ms = 6\n"
             "scenario.loss_pct = 0.6\n"
             "topology.profile = vm.medium\n"
             "topology.workers = 2\n");
  CHECK(settings.scenario_name == "etyp");
  CHECK(settings.wan_latency_ms == 30.0);
  CHECK(settings.wan_jitter_ms == 6.0);
  CHECK(settings.wan_loss_pct == 0.6);
  CHECK(settings.profile == "vm.medium");
  CHECK(settings.workers == 2);
}

TEST_CASE("later duplicates win") {
  ModelConfig model;
  FileSettings settings;
  apply_text(model, settings,
             "sim.noise_eps = 0.02\n"
             "sim.noise_eps = 0.07\n");
  CHECK(model.noise_eps == 0.07);
}

TEST_CASE("bad keys and bad values throw") {
  ModelConfig model;
  FileSettings settings;
  CHECK_THROWS_AS(apply_text(model, settings, "no.such.key = 1\n"), ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "tcp.mss_bytes = zero\n"), ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "tcp.mss_bytes = 0\n"), ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "sim.noise_eps = 1\n"), ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "sim.noise_eps = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "sim.timeout_ms = 0\n"), ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "scenario.name = nowhere\n"),
                  ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "topology.workers = 9\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      apply_text(model, settings, "service.hello-world.vm.huge.base_ms = 1\n"),
      ConfigError);
  CHECK_THROWS_AS(apply_text(model, settings, "autoscale.scale_step = 0\n"),
                  ConfigError);
}

TEST_CASE("config files parse from disk and missing files are io errors") {
  auto dir = std::filesystem::temp_directory_path() / "faasbench-config-test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "model.conf").string();
  {
    std::ofstream out(path);
    out << "sim.timeout_ms = 1234\n";
  }
  auto kv = parse_config_file(path);
  REQUIRE(kv.size() == 1);
  CHECK(kv[0].second == "1234");
  CHECK_THROWS_AS(parse_config_file((dir / "absent.conf").string()), IoError);
}

TEST_CASE("slots scale with vcpus and io headroom") {
  ServiceTable table = default_service_table();
  const auto& hello = table.get(FunctionName::hello_world);   // io-bound
  const auto& fib = table.get(FunctionName::fib_go);          // cpu-bound
  CHECK(slots_per_replica(NodeProfile::vm_large, hello, 1.0) == 8);
  CHECK(slots_per_replica(NodeProfile::vm_large, fib, 1.0) == 4);
  CHECK(slots_per_replica(NodeProfile::vm_small, fib, 1.0) == 1);
  CHECK(slots_per_replica(NodeProfile::vm_small, hello, 1.0) == 2);
  CHECK(slots_per_replica(NodeProfile::vm_small, fib, 0.1) == 1);  // floor of 1
  CHECK(slots_per_replica(NodeProfile::rp_metal, hello, 1.5) == 12);
}

TEST_CASE("bundled capacity defaults") {
  ModelConfig model;
  CHECK(model.capacity_for(NodeProfile::rp_metal).gateway_rps_cap == 430.0);
  CHECK(model.capacity_for(NodeProfile::vm_large).gateway_rps_cap == 0.0);
  CHECK(model.capacity_for(NodeProfile::vm_small).slots_factor == 1.0);
}
