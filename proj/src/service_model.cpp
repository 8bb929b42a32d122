#include "faasbench/service_model.hpp"

#include "faasbench/errors.hpp"

namespace faasbench {

std::string to_string(FunctionName name) {
  switch (name) {
    case FunctionName::hello_world: return "hello-world";
    case FunctionName::img_classifier_hub: return "img-classifier-hub";
    case FunctionName::payload_echo: return "payload-echo";
    case FunctionName::fib_go: return "fib-go";
  }
  throw ConfigError("invalid function enum value");
}

FunctionName function_from_string(std::string_view s) {
  if (s == "hello-world") return FunctionName::hello_world;
  if (s == "img-classifier-hub") return FunctionName::img_classifier_hub;
  if (s == "payload-echo") return FunctionName::payload_echo;
  if (s == "fib-go") return FunctionName::fib_go;
  throw ConfigError("unknown function: " + std::string(s));
}

const std::vector<FunctionName>& all_functions() {
  static const std::vector<FunctionName> names = {
      FunctionName::hello_world, FunctionName::img_classifier_hub,
      FunctionName::payload_echo, FunctionName::fib_go};
  return names;
}

uint64_t fib_calls(int n) {
  if (n < 0 || n > 40)
    throw InputError("fib_n must be in [0,40], got " + std::to_string(n));
  if (n <= 1) return 1;
  uint64_t prev = 1, cur = 1;
  for (int i = 2; i <= n; ++i) {
    uint64_t next = cur + prev + 1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double service_time(const FunctionSpec& func, NodeProfile profile,
                    uint64_t req_bytes, int fib_n, double noise_eps,
                    RngStream& rng) {
  auto it = func.service.find(profile);
  if (it == func.service.end())
    throw ConfigError("no service model for " + to_string(func.name) + " on " +
                      to_string(profile));
  const ServiceModel& m = it->second;
  double ms = m.base_ms;
  switch (m.kind) {
    case ServiceKind::constant:
      break;
    case ServiceKind::linear_bytes:
      ms += m.per_kb_ms * (static_cast<double>(req_bytes) / 1024.0);
      break;
    case ServiceKind::fib_cost:
      ms += m.per_call_ns * static_cast<double>(fib_calls(fib_n)) / 1e6;
      break;
  }
  if (noise_eps > 0) {
    double factor = 1.0 - noise_eps + 2.0 * noise_eps * rng.uniform();
    ms *= factor;
  }
  return ms < 0 ? 0.0 : ms;
}

const FunctionSpec& ServiceTable::get(FunctionName name) const {
  auto it = functions.find(name);
  if (it == functions.end())
    throw ConfigError("unknown function in service table: " + to_string(name));
  return it->second;
}

ServiceModel& ServiceTable::model(FunctionName name, NodeProfile profile) {
  return functions[name].service[profile];
}

namespace {

FunctionSpec make_constant(FunctionName name, bool cpu_bound, double rp,
                           double small, double medium, double large) {
  FunctionSpec f;
  f.name = name;
  f.cpu_bound = cpu_bound;
  f.service[NodeProfile::rp_metal] = {ServiceKind::constant, rp, 0, 0};
  f.service[NodeProfile::vm_small] = {ServiceKind::constant, small, 0, 0};
  f.service[NodeProfile::vm_medium] = {ServiceKind::constant, medium, 0, 0};
  f.service[NodeProfile::vm_large] = {ServiceKind::constant, large, 0, 0};
  return f;
}

}  // namespace

ServiceTable default_service_table() {
  ServiceTable t;

  t.functions[FunctionName::hello_world] =
      make_constant(FunctionName::hello_world, false, 13.0, 9.0, 8.5, 8.0);

  t.functions[FunctionName::img_classifier_hub] = make_constant(
      FunctionName::img_classifier_hub, true, 658.0, 180.0, 188.0, 175.0);

  FunctionSpec echo;
  echo.name = FunctionName::payload_echo;
  echo.echoes_payload = true;
  echo.service[NodeProfile::rp_metal] =
      {ServiceKind::linear_bytes, 19.4147, 0.508857, 0};
  echo.service[NodeProfile::vm_small] =
      {ServiceKind::linear_bytes, 13.0, 0.13, 0};
  echo.service[NodeProfile::vm_medium] =
      {ServiceKind::linear_bytes, 12.5, 0.115, 0};
  echo.service[NodeProfile::vm_large] =
      {ServiceKind::linear_bytes, 11.6702, 0.105598, 0};
  t.functions[FunctionName::payload_echo] = echo;

  FunctionSpec fib;
  fib.name = FunctionName::fib_go;
  fib.cpu_bound = true;
  fib.service[NodeProfile::rp_metal] = {ServiceKind::fib_cost, 8.0, 0, 150.0};
  fib.service[NodeProfile::vm_small] = {ServiceKind::fib_cost, 3.3, 0, 40.0};
  fib.service[NodeProfile::vm_medium] = {ServiceKind::fib_cost, 3.0, 0, 30.0};
  fib.service[NodeProfile::vm_large] = {ServiceKind::fib_cost, 2.8, 0, 25.0};
  t.functions[FunctionName::fib_go] = fib;

  return t;
}

}  // namespace faasbench
