#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faasbench/netmodel.hpp"
#include "faasbench/scenario.hpp"
#include "faasbench/service_model.hpp"

namespace faasbench {

struct AutoscalerConfig {
  double rps_threshold_per_replica = 50.0;
  int scale_step = 1;
  double reaction_ms = 5000.0;
  int max_replicas_per_worker = 1;
};

void validate(const AutoscalerConfig& cfg);

struct CapacityParams {
  double slots_factor = 1.0;
  double gateway_rps_cap = 0.0;  // 0 = uncapped
};

// Every tunable the simulator consumes. Defaults reproduce the bundled
// reference data.
struct ModelConfig {
  TransferModelParams tcp;
  ServiceTable services = default_service_table();
  AutoscalerConfig autoscale;
  std::map<NodeProfile, CapacityParams> capacity = default_capacity();
  double server_hop_overhead_ms = 15.0;
  int64_t intensive_payload_kb = 20;
  double lan_rtt_ms = 1.0;
  double noise_eps = 0.08;
  double timeout_ms = 30000.0;

  static std::map<NodeProfile, CapacityParams> default_capacity();
  const CapacityParams& capacity_for(NodeProfile profile) const;
};

// Executions one replica can run at once.
int slots_per_replica(NodeProfile profile, const FunctionSpec& func,
                      double slots_factor);

// Run-level selections a config file may carry alongside model keys.
struct FileSettings {
  std::optional<std::string> scenario_name;
  // Overrides of the cloud-equivalent WAN base, applied before the per-
  // scenario division.
  std::optional<double> wan_latency_ms;
  std::optional<double> wan_jitter_ms;
  std::optional<double> wan_loss_pct;
  std::optional<std::string> profile;
  std::optional<int> workers;
};

// `key = value` lines; '#' starts a comment; blank lines ignored. Later
// duplicates win. Order is preserved.
std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path);
std::vector<std::pair<std::string, std::string>> parse_config_text(
    const std::string& text);

// True when the key belongs to the model; throws ConfigError on a bad value.
bool apply_model_key(ModelConfig& model, const std::string& key,
                     const std::string& value);
bool apply_settings_key(FileSettings& settings, const std::string& key,
                        const std::string& value);

// Applies every pair; unknown keys throw ConfigError.
void apply_config(ModelConfig& model, FileSettings& settings,
                  const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace faasbench
