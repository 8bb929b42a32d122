#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "faasbench/rng.hpp"
#include "faasbench/scenario.hpp"

namespace faasbench {

enum class FunctionName { hello_world, img_classifier_hub, payload_echo, fib_go };

std::string to_string(FunctionName name);
FunctionName function_from_string(std::string_view s);
const std::vector<FunctionName>& all_functions();

enum class ServiceKind { constant, linear_bytes, fib_cost };

struct ServiceModel {
  ServiceKind kind = ServiceKind::constant;
  double base_ms = 0.0;
  double per_kb_ms = 0.0;    // linear_bytes only
  double per_call_ns = 0.0;  // fib_cost only
};

struct FunctionSpec {
  FunctionName name = FunctionName::hello_world;
  std::map<NodeProfile, ServiceModel> service;
  bool echoes_payload = false;
  uint64_t resp_bytes_fixed = 64;
  bool cpu_bound = false;

  uint64_t resp_bytes(uint64_t req_bytes) const {
    return echoes_payload ? req_bytes : resp_bytes_fixed;
  }
};

// Nodes in the naive recursive call tree: C(0)=C(1)=1, C(n)=C(n-1)+C(n-2)+1.
// Valid for n in [0, 40].
uint64_t fib_calls(int n);

// Modeled execution time with multiplicative noise in [1-eps, 1+eps].
// eps <= 0 consumes no randomness.
double service_time(const FunctionSpec& func, NodeProfile profile,
                    uint64_t req_bytes, int fib_n, double noise_eps,
                    RngStream& rng);

struct ServiceTable {
  std::map<FunctionName, FunctionSpec> functions;

  const FunctionSpec& get(FunctionName name) const;
  ServiceModel& model(FunctionName name, NodeProfile profile);
};

// Ships pre-fit so zero-WAN medians land on the bundled reference data.
ServiceTable default_service_table();

}  // namespace faasbench
