#include "faasbench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "faasbench/errors.hpp"

namespace faasbench {

void validate(const AutoscalerConfig& cfg) {
  if (!(cfg.rps_threshold_per_replica > 0))
    throw ConfigError("autoscale.threshold must be > 0");
  if (cfg.scale_step < 1) throw ConfigError("autoscale.scale_step must be >= 1");
  if (cfg.reaction_ms < 0)
    throw ConfigError("autoscale.reaction_ms must be >= 0");
  if (cfg.max_replicas_per_worker < 1)
    throw ConfigError("autoscale.max_replicas_per_worker must be >= 1");
}

std::map<NodeProfile, CapacityParams> ModelConfig::default_capacity() {
  std::map<NodeProfile, CapacityParams> caps;
  for (NodeProfile p : all_profiles()) caps[p] = CapacityParams{};
  // Bare-metal boards saturate at the gateway well before the VMs do.
  caps[NodeProfile::rp_metal].gateway_rps_cap = 430.0;
  return caps;
}

const CapacityParams& ModelConfig::capacity_for(NodeProfile profile) const {
  auto it = capacity.find(profile);
  if (it == capacity.end())
    throw ConfigError("no capacity params for " + to_string(profile));
  return it->second;
}

int slots_per_replica(NodeProfile profile, const FunctionSpec& func,
                      double slots_factor) {
  int per_vcpu = func.cpu_bound ? 1 : 2;
  double slots = vcpus(profile) * per_vcpu * slots_factor;
  int n = static_cast<int>(std::lround(slots));
  return n < 1 ? 1 : n;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v))
      throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": " + value);
  }
}

int64_t to_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": " + value);
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    kv.emplace_back(std::move(key), std::move(value));
  }
  return kv;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

bool apply_model_key(ModelConfig& model, const std::string& key,
                     const std::string& value) {
  if (key == "tcp.mss_bytes") {
    model.tcp.mss_bytes = static_cast<int>(to_int(key, value));
  } else if (key == "tcp.init_window_segs") {
    model.tcp.init_window_segs = static_cast<int>(to_int(key, value));
  } else if (key == "tcp.handshake_rounds") {
    model.tcp.handshake_rounds = static_cast<int>(to_int(key, value));
  } else if (key == "tcp.max_retries_per_round") {
    model.tcp.max_retries_per_round = static_cast<int>(to_int(key, value));
  } else if (key == "autoscale.threshold") {
    model.autoscale.rps_threshold_per_replica = to_real(key, value);
  } else if (key == "autoscale.scale_step") {
    model.autoscale.scale_step = static_cast<int>(to_int(key, value));
  } else if (key == "autoscale.reaction_ms") {
    model.autoscale.reaction_ms = to_real(key, value);
  } else if (key == "autoscale.max_replicas_per_worker") {
    model.autoscale.max_replicas_per_worker =
        static_cast<int>(to_int(key, value));
  } else if (key == "chain.server_hop_overhead_ms") {
    model.server_hop_overhead_ms = to_real(key, value);
    if (model.server_hop_overhead_ms < 0)
      throw ConfigError(key + " must be >= 0");
  } else if (key == "test.intensive.payload_kb") {
    model.intensive_payload_kb = to_int(key, value);
    if (model.intensive_payload_kb < 0)
      throw ConfigError(key + " must be >= 0");
  } else if (key == "infra.lan_rtt_ms") {
    model.lan_rtt_ms = to_real(key, value);
    if (model.lan_rtt_ms < 0) throw ConfigError(key + " must be >= 0");
  } else if (key == "sim.noise_eps") {
    model.noise_eps = to_real(key, value);
    if (model.noise_eps < 0 || model.noise_eps >= 1)
      throw ConfigError(key + " must be in [0,1)");
  } else if (key == "sim.timeout_ms") {
    model.timeout_ms = to_real(key, value);
    if (!(model.timeout_ms > 0)) throw ConfigError(key + " must be > 0");
  } else {
    // service.<function>.<profile>.<field>
    for (FunctionName fn : all_functions()) {
      for (NodeProfile p : all_profiles()) {
        std::string stem = "service." + to_string(fn) + "." + to_string(p) + ".";
        if (key == stem + "base_ms") {
          model.services.model(fn, p).base_ms = to_real(key, value);
          return true;
        }
        if (key == stem + "per_kb_ms") {
          model.services.model(fn, p).per_kb_ms = to_real(key, value);
          return true;
        }
        if (key == stem + "per_call_ns") {
          model.services.model(fn, p).per_call_ns = to_real(key, value);
          return true;
        }
      }
    }
    // capacity.<profile>.<field>
    for (NodeProfile p : all_profiles()) {
      std::string stem = "capacity." + to_string(p) + ".";
      if (key == stem + "slots_factor") {
        double v = to_real(key, value);
        if (!(v > 0)) throw ConfigError(key + " must be > 0");
        model.capacity[p].slots_factor = v;
        return true;
      }
      if (key == stem + "gateway_rps_cap") {
        double v = to_real(key, value);
        if (v < 0) throw ConfigError(key + " must be >= 0");
        model.capacity[p].gateway_rps_cap = v;
        return true;
      }
    }
    return false;
  }
  return true;
}

bool apply_settings_key(FileSettings& settings, const std::string& key,
                        const std::string& value) {
  if (key == "scenario.name") {
    scenario_from_string(value);
    settings.scenario_name = value;
  } else if (key == "scenario.latency_ms") {
    settings.wan_latency_ms = to_real(key, value);
  } else if (key == "scenario.jitter_ms") {
    settings.wan_jitter_ms = to_real(key, value);
  } else if (key == "scenario.loss_pct") {
    settings.wan_loss_pct = to_real(key, value);
  } else if (key == "topology.profile") {
    profile_from_string(value);
    settings.profile = value;
  } else if (key == "topology.workers") {
    int workers = static_cast<int>(to_int(key, value));
    if (workers < 1 || workers > kMaxWorkers)
      throw ConfigError(key + " must be in [1," + std::to_string(kMaxWorkers) + "]");
    settings.workers = workers;
  } else {
    return false;
  }
  return true;
}

void apply_config(ModelConfig& model, FileSettings& settings,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    if (apply_model_key(model, key, value)) continue;
    if (apply_settings_key(settings, key, value)) continue;
    throw ConfigError("unknown config key: " + key);
  }
  validate(model.tcp);
  validate(model.autoscale);
}

}  // namespace faasbench
