#pragma once

#include <string>
#include <vector>

#include "faasbench/workload.hpp"

namespace faasbench {

// Request body of exactly payload_kb * 1024 bytes: a "data" key padded to
// size. 0 KB sends an empty body.
std::string live_body(int64_t payload_kb);

// Drives a real gateway with the plan's closed-loop pacing, one fresh TCP
// connection per request. Failed requests are recorded, never thrown.
// Records come back sorted by (thread, seq).
std::vector<RequestRecord> execute_plan_live(const std::string& gateway_url,
                                             const TestPlan& plan,
                                             double timeout_ms,
                                             const std::string& scenario_label,
                                             const std::string& profile_label);

}  // namespace faasbench
