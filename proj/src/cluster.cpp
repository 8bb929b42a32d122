#include "faasbench/cluster.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <queue>

#include "faasbench/errors.hpp"
#include "faasbench/netmodel.hpp"
#include "faasbench/service_model.hpp"

namespace faasbench {

ScaleDecision autoscale_step(double observed_rps, int total_replicas,
                             int max_total_replicas,
                             const AutoscalerConfig& cfg, double now_ms) {
  validate(cfg);
  ScaleDecision d;
  if (total_replicas < max_total_replicas &&
      observed_rps > cfg.rps_threshold_per_replica * total_replicas) {
    d.scale = true;
    d.apply_at_ms = now_ms + cfg.reaction_ms;
    d.add_replicas =
        std::min(cfg.scale_step, max_total_replicas - total_replicas);
  }
  return d;
}

void apply_scale(std::vector<int>& replicas_per_worker, int count,
                 int max_per_worker) {
  if (replicas_per_worker.empty()) return;
  size_t cursor = 0;
  while (count > 0) {
    bool placed = false;
    for (size_t probe = 0; probe < replicas_per_worker.size(); ++probe) {
      size_t w = (cursor + probe) % replicas_per_worker.size();
      if (replicas_per_worker[w] < max_per_worker) {
        ++replicas_per_worker[w];
        cursor = w + 1;
        placed = true;
        break;
      }
    }
    if (!placed) break;
    --count;
  }
}

namespace {

enum class Ev : uint8_t {
  issue,
  gw_arrive,
  gw_admit,
  worker_arrive,
  chain_spawn,
  service_end,
  scale_check,
  scale_apply,
  timeout,
};

struct Event {
  double t = 0.0;
  uint64_t order = 0;
  Ev kind = Ev::issue;
  int thread = -1;
  int64_t req = -1;
  int frame = 0;
  int aux = 0;  // worker for arrivals, replica count for scale_apply
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.order > b.order;
  }
};

struct Request {
  int thread = 0;
  int64_t seq = 0;
  int step = 0;           // client-chain position
  double iter_start = 0;  // first issue of the iteration
  bool done = false;
  bool timed_out = false;
  std::vector<int> frame_workers;  // worker per started server-chain frame
};

struct Pending {
  int64_t req;
  int frame;
};

struct Worker {
  std::deque<Pending> queue;
  int in_flight = 0;
};

struct ThreadState {
  int64_t next_seq = 0;
  int64_t quota = 0;  // iterations to run; <0 means duration-driven
  double iter_issue = 0;
};

class Engine {
 public:
  Engine(const TestPlan& plan, const ScenarioSpec& scenario,
         const Topology& topology, const ModelConfig& model, uint64_t seed)
      : plan_(plan),
        scenario_(scenario),
        topology_(topology),
        model_(model),
        streams_(seed),
        svc_rng_(seed, "svc-noise"),
        func_(model.services.get(function_from_string(plan.function))) {
    if (plan_.threads < 1) throw ConfigError("threads must be >= 1");
    if (!(plan_.pacing_ms > 0)) throw ConfigError("pacing_ms must be > 0");
    if (plan_.total_requests < 0)
      throw ConfigError("total_requests must be >= 0");
    if (plan_.payload_kb < 0) throw ConfigError("payload_kb must be >= 0");
    if (plan_.chain_len < 1) throw ConfigError("chain_len must be >= 1");
    if (plan_.chain_mode == ChainMode::none && plan_.chain_len > 1)
      throw ConfigError("chain_len > 1 requires a chain_mode");
    fib_calls(plan_.fib_n);
    validate(scenario_.cwan, "cwan");
    validate(scenario_.ewan, "ewan");
    validate(model_.tcp);
    validate(model_.autoscale);
    if (topology_.worker_count < 1)
      throw ConfigError("simulation needs at least one worker");
    const CapacityParams& cap = model_.capacity_for(topology_.profile);
    slots_ = slots_per_replica(topology_.profile, func_, cap.slots_factor);
    gw_cap_ = cap.gateway_rps_cap;
    req_bytes_ = plan_.req_bytes();
    resp_bytes_ = func_.resp_bytes(req_bytes_);
    workers_.resize(static_cast<size_t>(topology_.worker_count));
    replicas_.assign(workers_.size(), 1);
    for (size_t w = 0; w < workers_.size(); ++w)
      ring_.push_back(static_cast<int>(w));
    if (plan_.chain_mode == ChainMode::server) {
      int per_worker = (plan_.chain_len + topology_.worker_count - 1) /
                       topology_.worker_count;
      if (per_worker > slots_)
        throw ConfigError("server chain of " + std::to_string(plan_.chain_len) +
                          " cannot fit with " + std::to_string(slots_) +
                          " slots per worker");
    }
    threads_.resize(static_cast<size_t>(plan_.threads));
    if (plan_.total_requests > 0) {
      int64_t total = plan_.total_requests;
      int64_t n = plan_.threads;
      for (int64_t i = 0; i < n; ++i)
        threads_[static_cast<size_t>(i)].quota =
            total / n + (i < total % n ? 1 : 0);
    } else {
      for (auto& ts : threads_) ts.quota = -1;
    }
  }

  std::vector<RequestRecord> run(SimDebug* debug) {
    for (int i = 0; i < plan_.threads; ++i) {
      double t0 = first_issue_ms(i, plan_.threads, plan_.pacing_ms);
      if (wants_issue(threads_[static_cast<size_t>(i)], t0))
        push({t0, 0, Ev::issue, i});
    }
    if (total_replicas() < max_total_replicas())
      push({1000.0, 0, Ev::scale_check});
    while (!events_.empty()) {
      Event ev = events_.top();
      events_.pop();
      dispatch(ev);
    }
    int64_t issued = 0;
    for (const auto& ts : threads_) issued += ts.next_seq;
    assert(static_cast<int64_t>(records_.size()) == issued);
    if (debug) {
      debug->final_replicas = static_cast<int>(ring_.size());
      debug->timeout_count = timeout_count_;
      debug->gateway_admissions = admissions_;
      debug->max_in_flight = max_in_flight_;
    }
    return std::move(records_);
  }

 private:
  void push(Event ev) {
    ev.order = ++order_;
    events_.push(ev);
  }

  int total_replicas() const { return static_cast<int>(ring_.size()); }

  int max_total_replicas() const {
    return model_.autoscale.max_replicas_per_worker * topology_.worker_count;
  }

  bool wants_issue(const ThreadState& ts, double at_ms) const {
    if (ts.quota >= 0) return ts.next_seq < ts.quota;
    return at_ms < plan_.duration_ms;
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case Ev::issue: on_issue(ev); break;
      case Ev::gw_arrive: on_gw_arrive(ev); break;
      case Ev::gw_admit: admit(ev.req, ev.t); break;
      case Ev::worker_arrive: on_worker_arrive(ev); break;
      case Ev::chain_spawn: on_chain_spawn(ev); break;
      case Ev::service_end: on_service_end(ev); break;
      case Ev::scale_check: on_scale_check(ev); break;
      case Ev::scale_apply: on_scale_apply(ev); break;
      case Ev::timeout: on_timeout(ev); break;
    }
  }

  void issue_request(int thread, int64_t seq, int step, double iter_start,
                     double t) {
    requests_.push_back(Request{thread, seq, step, iter_start, false, false, {}});
    auto id = static_cast<int64_t>(requests_.size()) - 1;
    double ext = external_exchange_ms(req_bytes_, resp_bytes_, scenario_.cwan,
                                      model_.tcp, streams_);
    push({t + model_.lan_rtt_ms + ext, 0, Ev::gw_arrive, thread, id});
    push({t + model_.timeout_ms, 0, Ev::timeout, thread, id});
  }

  void on_issue(const Event& ev) {
    ThreadState& ts = threads_[static_cast<size_t>(ev.thread)];
    ts.iter_issue = ev.t;
    issue_request(ev.thread, ts.next_seq, 0, ev.t, ev.t);
    ++ts.next_seq;
  }

  void on_gw_arrive(const Event& ev) {
    if (gw_cap_ <= 0) {
      admit(ev.req, ev.t);
      return;
    }
    double slot_t = std::max(ev.t, gw_next_admit_);
    gw_next_admit_ = slot_t + 1000.0 / gw_cap_;
    if (slot_t <= ev.t) {
      admit(ev.req, ev.t);
    } else {
      push({slot_t, 0, Ev::gw_admit, ev.thread, ev.req});
    }
  }

  void admit(int64_t id, double t) {
    ++admissions_;
    ++arrivals_window_;
    int w = next_replica_worker();
    double hop = internal_exchange_ms(req_bytes_, resp_bytes_, scenario_.ewan,
                                      model_.tcp, streams_);
    push({t + hop, 0, Ev::worker_arrive, requests_[static_cast<size_t>(id)].thread,
          id, 0, w});
  }

  int next_replica_worker() {
    int w = ring_[rr_ % ring_.size()];
    ++rr_;
    return w;
  }

  void on_worker_arrive(const Event& ev) {
    workers_[static_cast<size_t>(ev.aux)].queue.push_back({ev.req, ev.frame});
    try_start(ev.aux, ev.t);
  }

  void try_start(int w, double t) {
    Worker& wk = workers_[static_cast<size_t>(w)];
    int capacity = slots_ * replicas_[static_cast<size_t>(w)];
    while (wk.in_flight < capacity && !wk.queue.empty()) {
      Pending p = wk.queue.front();
      wk.queue.pop_front();
      ++wk.in_flight;
      note_in_flight();
      Request& r = requests_[static_cast<size_t>(p.req)];
      r.frame_workers.push_back(w);
      double svc = service_time(func_, topology_.profile, req_bytes_,
                                plan_.fib_n, model_.noise_eps, svc_rng_);
      bool spawns = plan_.chain_mode == ChainMode::server &&
                    p.frame < plan_.chain_len - 1;
      push({t + svc, 0, spawns ? Ev::chain_spawn : Ev::service_end, r.thread,
            p.req, p.frame});
    }
  }

  void on_chain_spawn(const Event& ev) {
    int w = next_replica_worker();
    double hop = internal_exchange_ms(req_bytes_, resp_bytes_, scenario_.ewan,
                                      model_.tcp, streams_);
    // Gateway work on a nested invocation only matters once the hop leaves
    // the node.
    if (!scenario_.ewan.is_zero()) hop += model_.server_hop_overhead_ms;
    push({ev.t + hop, 0, Ev::worker_arrive, ev.thread, ev.req, ev.frame + 1, w});
  }

  void on_service_end(const Event& ev) {
    Request& r = requests_[static_cast<size_t>(ev.req)];
    // Synchronous nesting: every held frame returns when the innermost one
    // finishes.
    for (int w : r.frame_workers) --workers_[static_cast<size_t>(w)].in_flight;
    std::vector<int> touched = r.frame_workers;
    r.frame_workers.clear();
    complete_request(r, ev.t);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int w : touched) try_start(w, ev.t);
  }

  void complete_request(Request& r, double t) {
    r.done = true;
    if (r.timed_out) return;
    if (plan_.chain_mode == ChainMode::client && r.step < plan_.chain_len - 1) {
      issue_request(r.thread, r.seq, r.step + 1, r.iter_start, t);
      return;
    }
    emit_record(r, t - r.iter_start, true);
    resume_thread(r.thread, t);
  }

  void emit_record(const Request& r, double elapsed, bool success) {
    RequestRecord rec;
    rec.test_id = to_string(plan_.kind);
    rec.scenario = to_string(scenario_.name);
    rec.profile = to_string(topology_.profile);
    rec.thread = r.thread;
    rec.seq = r.seq;
    rec.start_ms = r.iter_start;
    rec.elapsed_ms = elapsed;
    rec.success = success;
    rec.chain_len = plan_.chain_len;
    rec.chain_mode = to_string(plan_.chain_mode);
    records_.push_back(std::move(rec));
  }

  void resume_thread(int thread, double completion_t) {
    ThreadState& ts = threads_[static_cast<size_t>(thread)];
    double next_t = next_issue_ms(ts.iter_issue, completion_t, plan_.pacing_ms);
    if (wants_issue(ts, next_t)) push({next_t, 0, Ev::issue, thread});
  }

  void on_timeout(const Event& ev) {
    Request& r = requests_[static_cast<size_t>(ev.req)];
    if (r.done || r.timed_out) return;
    r.timed_out = true;
    ++timeout_count_;
    emit_record(r, ev.t - r.iter_start, false);
    resume_thread(r.thread, ev.t);
  }

  void on_scale_check(const Event& ev) {
    double rps = static_cast<double>(arrivals_window_);
    arrivals_window_ = 0;
    if (!scale_pending_) {
      ScaleDecision d = autoscale_step(rps, total_replicas(),
                                       max_total_replicas(), model_.autoscale,
                                       ev.t);
      if (d.scale) {
        scale_pending_ = true;
        push({d.apply_at_ms, 0, Ev::scale_apply, -1, -1, 0, d.add_replicas});
      }
    }
    if (!events_.empty()) push({ev.t + 1000.0, 0, Ev::scale_check});
  }

  void on_scale_apply(const Event& ev) {
    std::vector<int> before = replicas_;
    apply_scale(replicas_, ev.aux, model_.autoscale.max_replicas_per_worker);
    for (size_t w = 0; w < replicas_.size(); ++w)
      for (int i = before[w]; i < replicas_[w]; ++i)
        ring_.push_back(static_cast<int>(w));
    scale_pending_ = false;
    for (size_t w = 0; w < workers_.size(); ++w)
      try_start(static_cast<int>(w), ev.t);
  }

  void note_in_flight() {
    int64_t total = 0;
    for (const auto& wk : workers_) total += wk.in_flight;
    max_in_flight_ = std::max(max_in_flight_, total);
  }

  TestPlan plan_;
  ScenarioSpec scenario_;
  Topology topology_;
  const ModelConfig& model_;
  NetStreams streams_;
  RngStream svc_rng_;
  const FunctionSpec& func_;

  int slots_ = 1;
  double gw_cap_ = 0.0;
  uint64_t req_bytes_ = 0;
  uint64_t resp_bytes_ = 0;

  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  uint64_t order_ = 0;
  std::deque<Request> requests_;
  std::vector<Worker> workers_;
  std::vector<int> replicas_;
  std::vector<int> ring_;  // one entry per replica, value = worker index
  size_t rr_ = 0;
  std::vector<ThreadState> threads_;
  std::vector<RequestRecord> records_;

  double gw_next_admit_ = 0.0;
  int64_t arrivals_window_ = 0;
  bool scale_pending_ = false;
  int64_t timeout_count_ = 0;
  int64_t admissions_ = 0;
  int64_t max_in_flight_ = 0;
};

}  // namespace

std::vector<RequestRecord> run_sim(const TestPlan& plan,
                                   const ScenarioSpec& scenario,
                                   const Topology& topology,
                                   const ModelConfig& model, uint64_t seed,
                                   SimDebug* debug) {
  Engine engine(plan, scenario, topology, model, seed);
  return engine.run(debug);
}

}  // namespace faasbench
