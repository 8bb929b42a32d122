#include "faasbench/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "faasbench/errors.hpp"
#include "faasbench/service_model.hpp"

namespace faasbench {

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::overhead: return "overhead";
    case TestKind::intensive: return "intensive";
    case TestKind::payload: return "payload";
    case TestKind::scalability: return "scalability";
    case TestKind::workflow: return "workflow";
  }
  throw ConfigError("invalid test kind enum value");
}

TestKind test_kind_from_string(std::string_view s) {
  if (s == "overhead") return TestKind::overhead;
  if (s == "intensive") return TestKind::intensive;
  if (s == "payload") return TestKind::payload;
  if (s == "scalability") return TestKind::scalability;
  if (s == "workflow") return TestKind::workflow;
  throw ConfigError("unknown test kind: " + std::string(s));
}

const std::vector<TestKind>& all_test_kinds() {
  static const std::vector<TestKind> kinds = {
      TestKind::overhead, TestKind::intensive, TestKind::payload,
      TestKind::scalability, TestKind::workflow};
  return kinds;
}

std::string to_string(ChainMode mode) {
  switch (mode) {
    case ChainMode::none: return "none";
    case ChainMode::client: return "client";
    case ChainMode::server: return "server";
  }
  throw ConfigError("invalid chain mode enum value");
}

ChainMode chain_mode_from_string(std::string_view s) {
  if (s == "none") return ChainMode::none;
  if (s == "client") return ChainMode::client;
  if (s == "server") return ChainMode::server;
  throw ConfigError("unknown chain mode: " + std::string(s));
}

namespace {

TestPlan defaults_for(TestKind kind) {
  TestPlan p;
  p.kind = kind;
  switch (kind) {
    case TestKind::overhead:
      p.function = "hello-world";
      p.threads = 1;
      p.total_requests = 100;
      p.pacing_ms = 200.0;
      p.payload_kb = 0;
      break;
    case TestKind::intensive:
      p.function = "img-classifier-hub";
      p.threads = 1;
      p.total_requests = 100;
      p.pacing_ms = 2000.0;
      p.payload_kb = 20;
      break;
    case TestKind::payload:
      p.function = "payload-echo";
      p.threads = 1;
      p.total_requests = 100;
      p.pacing_ms = 5000.0;
      p.payload_kb = 1;
      break;
    case TestKind::scalability:
      p.function = "fib-go";
      p.threads = 100;
      p.total_requests = 0;
      p.duration_ms = 300000.0;
      p.pacing_ms = 250.0;
      p.payload_kb = 0;
      p.fib_n = 1;
      break;
    case TestKind::workflow:
      p.function = "payload-echo";
      p.threads = 1;
      p.total_requests = 100;
      p.pacing_ms = 100.0;
      p.payload_kb = 1;
      p.chain_len = 5;
      p.chain_mode = ChainMode::client;
      break;
  }
  return p;
}

int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": " + value);
  }
}

double parse_real(const std::string& key, const std::string& value) {
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

}  // namespace

TestPlan build_plan(TestKind kind,
                    const std::map<std::string, std::string>& overrides,
                    bool force) {
  TestPlan p = defaults_for(kind);
  for (const auto& [key, value] : overrides) {
    if (key == "threads") {
      p.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "pacing_ms") {
      p.pacing_ms = parse_real(key, value);
    } else if (key == "total_requests") {
      p.total_requests = parse_int(key, value);
      if (p.total_requests > 0) p.duration_ms = 0.0;
    } else if (key == "duration_ms") {
      p.duration_ms = parse_real(key, value);
      if (p.duration_ms > 0) p.total_requests = 0;
    } else if (key == "payload_kb") {
      p.payload_kb = parse_int(key, value);
    } else if (key == "fib_n") {
      p.fib_n = static_cast<int>(parse_int(key, value));
    } else if (key == "chain_len") {
      p.chain_len = static_cast<int>(parse_int(key, value));
    } else if (key == "chain_mode") {
      p.chain_mode = chain_mode_from_string(value);
    } else if (key == "function") {
      function_from_string(value);
      p.function = value;
    } else {
      throw ConfigError("unknown plan override: " + key);
    }
  }
  validate_plan(p, force);
  return p;
}

void validate_plan(const TestPlan& plan, bool force) {
  function_from_string(plan.function);
  if (plan.threads < 1) throw ConfigError("threads must be >= 1");
  if (!(plan.pacing_ms > 0)) throw ConfigError("pacing_ms must be > 0");
  if (plan.total_requests < 0)
    throw ConfigError("total_requests must be >= 0");
  if (plan.total_requests == 0 && !(plan.duration_ms > 0))
    throw ConfigError("either total_requests or duration_ms must be set");
  if (plan.payload_kb < 0) throw ConfigError("payload_kb must be >= 0");
  if (plan.fib_n < 0 || plan.fib_n > 40)
    throw ConfigError("fib_n must be in [0,40]");
  if (plan.chain_len < 1) throw ConfigError("chain_len must be >= 1");
  if (plan.kind == TestKind::scalability && !force &&
      (plan.threads < 100 || plan.threads > 500))
    throw ConfigError(
        "scalability threads must be in [100,500]; pass --force to override");
  if (plan.kind == TestKind::workflow && plan.chain_mode == ChainMode::none)
    throw ConfigError("workflow requires chain_mode client or server");
}

double next_issue_ms(double prev_issue_ms, double prev_completion_ms,
                     double pacing_ms) {
  return std::max(prev_issue_ms + pacing_ms, prev_completion_ms);
}

double first_issue_ms(int thread_index, int threads, double pacing_ms) {
  return pacing_ms * static_cast<double>(thread_index) /
         static_cast<double>(threads);
}

bool operator==(const RequestRecord& a, const RequestRecord& b) {
  return a.test_id == b.test_id && a.scenario == b.scenario &&
         a.profile == b.profile && a.thread == b.thread && a.seq == b.seq &&
         a.start_ms == b.start_ms && a.elapsed_ms == b.elapsed_ms &&
         a.success == b.success && a.chain_len == b.chain_len &&
         a.chain_mode == b.chain_mode;
}

double chain_elapsed_client(const std::vector<double>& per_request_times) {
  if (per_request_times.empty())
    throw InputError("chain_elapsed_client: empty chain");
  double total = 0.0;
  for (double t : per_request_times) total += t;
  return total;
}

}  // namespace faasbench
