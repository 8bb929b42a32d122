#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace faasbench {

// Emulated WAN properties of one network segment. All-zero means the
// segment is not emulated (plain LAN).
struct WanParams {
  double latency_ms = 0.0;  // mean added one-way delay per link traversal
  double jitter_ms = 0.0;   // dispersion of the added delay
  double loss_pct = 0.0;    // per-packet loss probability x100, in [0,100]

  bool is_zero() const {
    return latency_ms == 0.0 && jitter_ms == 0.0 && loss_pct == 0.0;
  }
  bool operator==(const WanParams&) const = default;
};

// Throws ConfigError if a field is non-finite, negative, or loss > 100.
void validate(const WanParams& wan, std::string_view what);

enum class ScenarioName { loc, cld, ewst, etyp, eopt };

std::string to_string(ScenarioName name);
ScenarioName scenario_from_string(std::string_view s);
const std::vector<ScenarioName>& all_scenarios();  // loc, cld, ewst, etyp, eopt

// A named network condition set. cwan applies on the tester<->cluster
// segment, ewan on every master<->worker segment inside the cluster.
struct ScenarioSpec {
  ScenarioName name = ScenarioName::loc;
  WanParams cwan;
  WanParams ewan;
  int divisor = 1;

  bool operator==(const ScenarioSpec&) const = default;
};

// Base (cloud-equivalent) WAN values the named scenarios derive from.
struct WanBase {
  double latency_ms = 25.0;
  double jitter_ms = 5.0;
  double loss_pct = 0.4;
};

ScenarioSpec derive_scenario(ScenarioName name);
ScenarioSpec derive_scenario(ScenarioName name, const WanBase& base);

enum class NodeProfile { rp_metal, vm_small, vm_medium, vm_large };

std::string to_string(NodeProfile profile);
NodeProfile profile_from_string(std::string_view s);
const std::vector<NodeProfile>& all_profiles();

int vcpus(NodeProfile profile);
int ram_gb(NodeProfile profile);

// Homogeneous cluster: an implicit master hosting the gateway plus
// worker_count workers that run the functions.
struct Topology {
  NodeProfile profile = NodeProfile::vm_large;
  int worker_count = 1;
};

constexpr int kMaxWorkers = 3;

Topology build_topology(NodeProfile profile, int worker_count);

// Prints a value with up to four decimals, trailing zeros trimmed
// ("25", "12.5", "0.08").
std::string format_netem_value(double value);

// One `tc qdisc add` line per distinct non-zero segment. Identical
// segments (every edge scenario has cwan == ewan) collapse to one line,
// since the same command is issued on each participating host.
std::vector<std::string> emit_netem_commands(const ScenarioSpec& spec,
                                             std::string_view iface);

}  // namespace faasbench
