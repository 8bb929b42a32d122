#include "faasbench/scenario.hpp"

#include <cmath>
#include <cstdio>

#include "faasbench/errors.hpp"

namespace faasbench {

void validate(const WanParams& wan, std::string_view what) {
  auto bad = [&](const char* field) {
    throw ConfigError(std::string(what) + ": invalid " + field);
  };
  if (!std::isfinite(wan.latency_ms) || wan.latency_ms < 0) bad("latency_ms");
  if (!std::isfinite(wan.jitter_ms) || wan.jitter_ms < 0) bad("jitter_ms");
  if (!std::isfinite(wan.loss_pct) || wan.loss_pct < 0 || wan.loss_pct > 100)
    bad("loss_pct");
}

std::string to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::loc: return "loc";
    case ScenarioName::cld: return "cld";
    case ScenarioName::ewst: return "ewst";
    case ScenarioName::etyp: return "etyp";
    case ScenarioName::eopt: return "eopt";
  }
  throw ConfigError("invalid scenario enum value");
}

ScenarioName scenario_from_string(std::string_view s) {
  if (s == "loc") return ScenarioName::loc;
  if (s == "cld") return ScenarioName::cld;
  if (s == "ewst") return ScenarioName::ewst;
  if (s == "etyp") return ScenarioName::etyp;
  if (s == "eopt") return ScenarioName::eopt;
  throw ConfigError("unknown scenario: " + std::string(s));
}

const std::vector<ScenarioName>& all_scenarios() {
  static const std::vector<ScenarioName> names = {
      ScenarioName::loc, ScenarioName::cld, ScenarioName::ewst,
      ScenarioName::etyp, ScenarioName::eopt};
  return names;
}

ScenarioSpec derive_scenario(ScenarioName name) {
  return derive_scenario(name, WanBase{});
}

ScenarioSpec derive_scenario(ScenarioName name, const WanBase& base) {
  ScenarioSpec spec;
  spec.name = name;
  const WanParams full{base.latency_ms, base.jitter_ms, base.loss_pct};
  validate(full, "scenario base");
  switch (name) {
    case ScenarioName::loc:
      spec.divisor = 1;
      break;
    case ScenarioName::cld:
      spec.divisor = 1;
      spec.cwan = full;
      break;
    case ScenarioName::ewst:
    case ScenarioName::etyp:
    case ScenarioName::eopt: {
      spec.divisor = name == ScenarioName::ewst ? 2
                     : name == ScenarioName::etyp ? 3
                                                  : 5;
      const double n = static_cast<double>(spec.divisor);
      spec.cwan = WanParams{full.latency_ms / n, full.jitter_ms / n,
                            full.loss_pct / n};
      spec.ewan = spec.cwan;
      break;
    }
  }
  return spec;
}

std::string to_string(NodeProfile profile) {
  switch (profile) {
    case NodeProfile::rp_metal: return "rp.metal";
    case NodeProfile::vm_small: return "vm.small";
    case NodeProfile::vm_medium: return "vm.medium";
    case NodeProfile::vm_large: return "vm.large";
  }
  throw ConfigError("invalid profile enum value");
}

NodeProfile profile_from_string(std::string_view s) {
  if (s == "rp.metal") return NodeProfile::rp_metal;
  if (s == "vm.small") return NodeProfile::vm_small;
  if (s == "vm.medium") return NodeProfile::vm_medium;
  if (s == "vm.large") return NodeProfile::vm_large;
  throw ConfigError("unknown node profile: " + std::string(s));
}

const std::vector<NodeProfile>& all_profiles() {
  static const std::vector<NodeProfile> profiles = {
      NodeProfile::rp_metal, NodeProfile::vm_small, NodeProfile::vm_medium,
      NodeProfile::vm_large};
  return profiles;
}

int vcpus(NodeProfile profile) {
  switch (profile) {
    case NodeProfile::rp_metal: return 4;
    case NodeProfile::vm_small: return 1;
    case NodeProfile::vm_medium: return 2;
    case NodeProfile::vm_large: return 4;
  }
  throw ConfigError("invalid profile enum value");
}

int ram_gb(NodeProfile profile) {
  switch (profile) {
    case NodeProfile::rp_metal: return 8;
    case NodeProfile::vm_small: return 2;
    case NodeProfile::vm_medium: return 4;
    case NodeProfile::vm_large: return 8;
  }
  throw ConfigError("invalid profile enum value");
}

Topology build_topology(NodeProfile profile, int worker_count) {
  if (worker_count < 1 || worker_count > kMaxWorkers) {
    throw ConfigError("worker_count must be in [1," +
                      std::to_string(kMaxWorkers) + "], got " +
                      std::to_string(worker_count));
  }
  return Topology{profile, worker_count};
}

std::string format_netem_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    auto last = s.find_last_not_of('0');
    if (last == dot) last = dot - 1;
    s.erase(last + 1);
  }
  return s;
}

std::vector<std::string> emit_netem_commands(const ScenarioSpec& spec,
                                             std::string_view iface) {
  validate(spec.cwan, "cwan");
  validate(spec.ewan, "ewan");
  std::vector<std::string> cmds;
  auto add = [&](const WanParams& wan) {
    if (wan.is_zero()) return;
    std::string cmd = "tc qdisc add dev " + std::string(iface) +
                      " root netem delay " +
                      format_netem_value(wan.latency_ms) + "ms " +
                      format_netem_value(wan.jitter_ms) + "ms loss " +
                      format_netem_value(wan.loss_pct) + "%";
    for (const auto& existing : cmds) {
      if (existing == cmd) return;
    }
    cmds.push_back(std::move(cmd));
  };
  add(spec.cwan);
  add(spec.ewan);
  return cmds;
}

}  // namespace faasbench
