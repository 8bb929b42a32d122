#include <doctest.h>

#include <cmath>
#include <string>

#include "faasbench/errors.hpp"
#include "faasbench/workload.hpp"

using namespace faasbench;

TEST_CASE("per-kind defaults") {
  auto overhead = build_plan(TestKind::overhead, {});
  CHECK(overhead.function == "hello-world");
  CHECK(overhead.threads == 1);
  CHECK(overhead.total_requests == 100);
  CHECK(overhead.pacing_ms == 200.0);
  CHECK(overhead.payload_kb == 0);
  CHECK(overhead.chain_mode == ChainMode::none);

  auto intensive = build_plan(TestKind::intensive, {});
  CHECK(intensive.function == "img-classifier-hub");
  CHECK(intensive.pacing_ms == 2000.0);
  CHECK(intensive.total_requests == 100);

  auto payload = build_plan(TestKind::payload, {});
  CHECK(payload.function == "payload-echo");
  CHECK(payload.pacing_ms == 5000.0);
  CHECK(payload.payload_kb == 1);

  auto scalability = build_plan(TestKind::scalability, {});
  CHECK(scalability.function == "fib-go");
  CHECK(scalability.threads == 100);
  CHECK(scalability.pacing_ms == 250.0);
  CHECK(scalability.total_requests == 0);
  CHECK(scalability.duration_ms == 300'000.0);
  CHECK(scalability.fib_n == 1);

  auto workflow = build_plan(TestKind::workflow, {});
  CHECK(workflow.function == "payload-echo");
  CHECK(workflow.chain_len == 5);
  CHECK(workflow.chain_mode == ChainMode::client);
  CHECK(workflow.pacing_ms == 100.0);
  CHECK(workflow.payload_kb == 1);
}

TEST_CASE("overrides apply and re-validate") {
  auto p = build_plan(TestKind::payload, {{"payload_kb", "7"}});
  CHECK(p.payload_kb == 7);

  auto t = build_plan(TestKind::overhead, {{"threads", "4"}, {"pacing_ms", "50"}});
  CHECK(t.threads == 4);
  CHECK(t.pacing_ms == 50.0);

  // switching the driver clears the other one
  auto d = build_plan(TestKind::overhead, {{"duration_ms", "1000"}});
  CHECK(d.total_requests == 0);
  CHECK(d.duration_ms == 1000.0);
  auto r = build_plan(TestKind::scalability, {{"total_requests", "50"}});
  CHECK(r.total_requests == 50);
  CHECK(r.duration_ms == 0.0);

  CHECK_THROWS_AS(build_plan(TestKind::overhead, {{"no_such_key", "1"}}),
                  ConfigError);
  CHECK_THROWS_AS(build_plan(TestKind::overhead, {{"threads", "junk"}}),
                  ConfigError);
  CHECK_THROWS_AS(build_plan(TestKind::overhead, {{"threads", "0"}}), ConfigError);
  CHECK_THROWS_AS(build_plan(TestKind::payload, {{"payload_kb", "-1"}}),
                  ConfigError);
  CHECK_THROWS_AS(build_plan(TestKind::scalability, {{"fib_n", "41"}}),
                  ConfigError);
}

TEST_CASE("scalability guards its thread range unless forced") {
  CHECK_THROWS_AS(build_plan(TestKind::scalability, {{"threads", "50"}}),
                  ConfigError);
  CHECK_THROWS_AS(build_plan(TestKind::scalability, {{"threads", "501"}}),
                  ConfigError);
  try {
    build_plan(TestKind::scalability, {{"threads", "50"}});
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("--force") != std::string::npos);
  }
  auto forced = build_plan(TestKind::scalability, {{"threads", "50"}}, true);
  CHECK(forced.threads == 50);
  CHECK(build_plan(TestKind::scalability, {{"threads", "500"}}).threads == 500);
}

TEST_CASE("workflow needs a chain mode") {
  CHECK_THROWS_AS(build_plan(TestKind::workflow, {{"chain_mode", "none"}}),
                  ConfigError);
  auto server = build_plan(TestKind::workflow, {{"chain_mode", "server"}});
  CHECK(server.chain_mode == ChainMode::server);
  CHECK_THROWS_AS(build_plan(TestKind::workflow, {{"chain_mode", "sideways"}}),
                  ConfigError);
}

TEST_CASE("closed-loop pacing floor") {
  // fast response: pacing dominates
  CHECK(next_issue_ms(1000.0, 1020.0, 200.0) == 1200.0);
  // slow response: completion dominates
  CHECK(next_issue_ms(1000.0, 1500.0, 200.0) == 1500.0);
  CHECK(next_issue_ms(0.0, 0.0, 250.0) == 250.0);

  // offered rate identity: n requests with instant responses take
  // (n-1) * pacing, so the rate converges on 1000/pacing per thread
  double t = 0.0;
  int n = 101;
  for (int i = 1; i < n; ++i) t = next_issue_ms(t, t + 1.0, 200.0);
  double rate = 1000.0 * (n - 1) / t;
  CHECK(rate == doctest::Approx(1000.0 / 200.0).epsilon(0.01));
}

TEST_CASE("first issues stagger across one pacing interval") {
  CHECK(first_issue_ms(0, 4, 200.0) == 0.0);
  CHECK(first_issue_ms(1, 4, 200.0) == 50.0);
  CHECK(first_issue_ms(3, 4, 200.0) == 150.0);
  CHECK(first_issue_ms(0, 1, 200.0) == 0.0);
}

TEST_CASE("client chain elapsed is the plain sum") {
  CHECK(chain_elapsed_client({1.0, 2.0, 3.5}) == 6.5);
  CHECK(chain_elapsed_client({10.0}) == 10.0);
  CHECK_THROWS_AS(chain_elapsed_client({}), InputError);
}

TEST_CASE("kind and mode names round-trip") {
  for (auto k : all_test_kinds()) CHECK(test_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(test_kind_from_string("latency"), ConfigError);
  CHECK(chain_mode_from_string("server") == ChainMode::server);
  CHECK(to_string(ChainMode::client) == "client");
}
