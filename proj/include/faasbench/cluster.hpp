#pragma once

#include <cstdint>
#include <vector>

#include "faasbench/config.hpp"
#include "faasbench/workload.hpp"

namespace faasbench {

struct ScaleDecision {
  bool scale = false;
  double apply_at_ms = 0.0;
  int add_replicas = 0;
};

// Over-threshold load schedules one scaling step after the reaction delay.
// Scaling only ever adds replicas, so the total never drops below one.
ScaleDecision autoscale_step(double observed_rps, int total_replicas,
                             int max_total_replicas,
                             const AutoscalerConfig& cfg, double now_ms);

// Adds `count` replicas one worker at a time in round-robin order, skipping
// workers already at the per-worker cap.
void apply_scale(std::vector<int>& replicas_per_worker, int count,
                 int max_per_worker);

struct SimDebug {
  int final_replicas = 0;
  int64_t timeout_count = 0;
  int64_t gateway_admissions = 0;
  int64_t max_in_flight = 0;
};

// Full discrete-event run of one plan on one cluster. Single-threaded and
// deterministic for a fixed seed; every issued request yields exactly one
// record, in completion order.
std::vector<RequestRecord> run_sim(const TestPlan& plan,
                                   const ScenarioSpec& scenario,
                                   const Topology& topology,
                                   const ModelConfig& model, uint64_t seed,
                                   SimDebug* debug = nullptr);

}  // namespace faasbench
