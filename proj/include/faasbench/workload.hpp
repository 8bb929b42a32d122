#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace faasbench {

enum class TestKind { overhead, intensive, payload, scalability, workflow };

std::string to_string(TestKind kind);
TestKind test_kind_from_string(std::string_view s);
const std::vector<TestKind>& all_test_kinds();

enum class ChainMode { none, client, server };

std::string to_string(ChainMode mode);
ChainMode chain_mode_from_string(std::string_view s);

struct TestPlan {
  TestKind kind = TestKind::overhead;
  std::string function = "hello-world";
  int threads = 1;
  double pacing_ms = 200.0;
  // Exactly one of these drives the run: total_requests when > 0, else
  // duration_ms.
  int64_t total_requests = 100;
  double duration_ms = 0.0;
  int64_t payload_kb = 0;
  int fib_n = 1;
  int chain_len = 1;
  ChainMode chain_mode = ChainMode::none;

  uint64_t req_bytes() const {
    return static_cast<uint64_t>(payload_kb) * 1024;
  }
};

// Plan with per-kind defaults, then overrides applied and re-validated.
// Override keys: threads, pacing_ms, total_requests, duration_ms, payload_kb,
// fib_n, chain_len, chain_mode, function. `force` lifts the scalability
// thread-range guard.
TestPlan build_plan(TestKind kind,
                    const std::map<std::string, std::string>& overrides,
                    bool force = false);

void validate_plan(const TestPlan& plan, bool force = false);

// Closed-loop pacing: a thread's next request leaves when the pacing interval
// has elapsed and the previous response is in.
double next_issue_ms(double prev_issue_ms, double prev_completion_ms,
                     double pacing_ms);

// First issues are staggered across one pacing interval.
double first_issue_ms(int thread_index, int threads, double pacing_ms);

struct RequestRecord {
  std::string test_id;
  std::string scenario;
  std::string profile;
  int thread = 0;
  int64_t seq = 0;
  double start_ms = 0.0;
  double elapsed_ms = 0.0;
  bool success = true;
  int chain_len = 1;
  std::string chain_mode = "none";
};

bool operator==(const RequestRecord& a, const RequestRecord& b);

// Sequentially triggered chain: total elapsed is the sum of the per-request
// times.
double chain_elapsed_client(const std::vector<double>& per_request_times);

}  // namespace faasbench
