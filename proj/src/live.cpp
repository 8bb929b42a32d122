#include "faasbench/live.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include <httplib.h>

#include "faasbench/errors.hpp"

namespace faasbench {

std::string live_body(int64_t payload_kb) {
  int64_t total = payload_kb * 1024;
  if (total <= 0) return "";
  const std::string head = "{\"data\":\"";
  const std::string tail = "\"}";
  auto overhead = static_cast<int64_t>(head.size() + tail.size());
  if (total < overhead) return std::string(static_cast<size_t>(total), 'A');
  return head + std::string(static_cast<size_t>(total - overhead), 'A') + tail;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void sleep_until_ms(Clock::time_point t0, double at_ms) {
  auto target = t0 + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double, std::milli>(at_ms));
  std::this_thread::sleep_until(target);
}

}  // namespace

std::vector<RequestRecord> execute_plan_live(const std::string& gateway_url,
                                             const TestPlan& plan,
                                             double timeout_ms,
                                             const std::string& scenario_label,
                                             const std::string& profile_label) {
  if (gateway_url.rfind("http://", 0) != 0 &&
      gateway_url.rfind("https://", 0) != 0)
    throw ConfigError("gateway URL must start with http:// or https://: " +
                      gateway_url);
  if (!(timeout_ms > 0)) throw ConfigError("timeout_ms must be > 0");
  {
    httplib::Client probe(gateway_url);
    if (!probe.is_valid()) throw ConfigError("malformed gateway URL: " + gateway_url);
  }

  const std::string path = "/function/" + plan.function;
  const std::string body = live_body(plan.payload_kb);
  const int posts_per_iteration =
      plan.chain_mode == ChainMode::client ? plan.chain_len : 1;
  auto timeout_us = std::chrono::microseconds(
      static_cast<int64_t>(timeout_ms * 1000.0));

  std::vector<std::vector<RequestRecord>> per_thread(
      static_cast<size_t>(plan.threads));
  Clock::time_point t0 = Clock::now();

  auto worker = [&](int ti) {
    auto& out = per_thread[static_cast<size_t>(ti)];
    int64_t quota = -1;
    if (plan.total_requests > 0) {
      int64_t total = plan.total_requests;
      quota = total / plan.threads + (ti < total % plan.threads ? 1 : 0);
    }
    double issue_at = first_issue_ms(ti, plan.threads, plan.pacing_ms);
    int64_t seq = 0;
    while (quota >= 0 ? seq < quota : issue_at < plan.duration_ms) {
      sleep_until_ms(t0, issue_at);
      double iter_start = ms_since(t0);
      bool ok = true;
      for (int step = 0; step < posts_per_iteration; ++step) {
        httplib::Client cli(gateway_url);
        cli.set_keep_alive(false);
        cli.set_connection_timeout(timeout_us);
        cli.set_read_timeout(timeout_us);
        cli.set_write_timeout(timeout_us);
        auto res = cli.Post(path, body, "application/json");
        if (!res || res->status < 200 || res->status >= 300) {
          ok = false;
          break;
        }
      }
      double done = ms_since(t0);
      RequestRecord rec;
      rec.test_id = to_string(plan.kind);
      rec.scenario = scenario_label;
      rec.profile = profile_label;
      rec.thread = ti;
      rec.seq = seq;
      rec.start_ms = iter_start;
      rec.elapsed_ms = done - iter_start;
      rec.success = ok;
      rec.chain_len = plan.chain_len;
      rec.chain_mode = to_string(plan.chain_mode);
      out.push_back(std::move(rec));
      ++seq;
      issue_at = next_issue_ms(issue_at, done, plan.pacing_ms);
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(plan.threads));
  for (int i = 0; i < plan.threads; ++i) threads.emplace_back(worker, i);
  for (auto& th : threads) th.join();

  std::vector<RequestRecord> records;
  for (auto& part : per_thread)
    for (auto& r : part) records.push_back(std::move(r));
  std::sort(records.begin(), records.end(),
            [](const RequestRecord& a, const RequestRecord& b) {
              if (a.thread != b.thread) return a.thread < b.thread;
              return a.seq < b.seq;
            });
  return records;
}

}  // namespace faasbench
