#include <doctest.h>

#include <atomic>
#include <chrono>
#include <string>
#include <thread>

#include <httplib.h>

#include "faasbench/errors.hpp"
#include "faasbench/live.hpp"

using namespace faasbench;

namespace {

struct StubGateway {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int64_t> posts{0};
  std::atomic<int64_t> body_bytes{0};

  explicit StubGateway(int delay_ms) {
    server.Post(R"(/function/(.+))", [this, delay_ms](const httplib::Request& req,
                                                      httplib::Response& res) {
      ++posts;
      body_bytes += static_cast<int64_t>(req.body.size());
      if (delay_ms > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      res.set_content(req.body.empty() ? std::string("{}") : req.body,
                      "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~StubGateway() {
    server.stop();
    thread.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port); }
};

}  // namespace

TEST_CASE("request bodies are padded to the exact size") {
  CHECK(live_body(0).empty());
  CHECK(live_body(1).size() == 1024);
  CHECK(live_body(7).size() == 7 * 1024);
  std::string body = live_body(1);
  CHECK(body.substr(0, 9) == "{\"data\":\"");
  CHECK(body.substr(body.size() - 2) == "\"}");
}

TEST_CASE("the live driver completes a plan against a loopback gateway") {
  StubGateway gw(20);
  auto plan = build_plan(TestKind::overhead, {{"threads", "3"},
                                              {"total_requests", "12"},
                                              {"pacing_ms", "30"}});
  auto records = execute_plan_live(gw.url(), plan, 5000.0, "loc", "vm.large");
  REQUIRE(records.size() == 12);
  for (size_t i = 1; i < records.size(); ++i) {
    bool ordered = records[i - 1].thread < records[i].thread ||
                   (records[i - 1].thread == records[i].thread &&
                    records[i - 1].seq < records[i].seq);
    CHECK(ordered);
  }
  for (const auto& r : records) {
    CHECK(r.success);
    CHECK(r.elapsed_ms >= 15.0);  // the stub sleeps 20 ms
    CHECK(r.scenario == "loc");
    CHECK(r.profile == "vm.large");
    CHECK(r.test_id == "overhead");
  }
  CHECK(gw.posts.load() == 12);
  CHECK(gw.body_bytes.load() == 0);  // the trivial function sends no payload
}

TEST_CASE("client chains multiply the posts, not the records") {
  StubGateway gw(0);
  auto plan = build_plan(TestKind::workflow, {{"total_requests", "4"},
                                              {"pacing_ms", "5"},
                                              {"chain_len", "3"}});
  auto records = execute_plan_live(gw.url(), plan, 5000.0, "loc", "rp.metal");
  REQUIRE(records.size() == 4);
  CHECK(gw.posts.load() == 12);
  CHECK(gw.body_bytes.load() == 12 * 1024);  // 1 KB per step
  for (const auto& r : records) {
    CHECK(r.success);
    CHECK(r.chain_len == 3);
    CHECK(r.chain_mode == "client");
  }
}

TEST_CASE("an unreachable gateway records failures instead of throwing") {
  int dead_port;
  {
    httplib::Server probe;
    dead_port = probe.bind_to_any_port("127.0.0.1");
    // bound then released: nothing listens there now
  }
  auto plan = build_plan(TestKind::overhead, {{"threads", "1"},
                                              {"total_requests", "5"},
                                              {"pacing_ms", "1"}});
  auto records = execute_plan_live("http://127.0.0.1:" + std::to_string(dead_port),
                                   plan, 500.0, "loc", "vm.large");
  REQUIRE(records.size() == 5);
  for (const auto& r : records) CHECK(!r.success);
}

TEST_CASE("bad gateway urls and timeouts are config errors") {
  auto plan = build_plan(TestKind::overhead, {});
  CHECK_THROWS_AS(execute_plan_live("ftp://somewhere", plan, 1000.0, "loc", "x"),
                  ConfigError);
  CHECK_THROWS_AS(execute_plan_live("not a url", plan, 1000.0, "loc", "x"),
                  ConfigError);
  CHECK_THROWS_AS(
      execute_plan_live("http://127.0.0.1:1", plan, 0.0, "loc", "x"),
      ConfigError);
}
