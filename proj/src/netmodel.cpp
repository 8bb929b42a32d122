#include "faasbench/netmodel.hpp"

#include <algorithm>
#include <cmath>

#include "faasbench/errors.hpp"

namespace faasbench {

void validate(const TransferModelParams& params) {
  if (params.mss_bytes <= 0) throw ConfigError("tcp.mss_bytes must be > 0");
  if (params.init_window_segs <= 0)
    throw ConfigError("tcp.init_window_segs must be > 0");
  if (params.handshake_rounds < 0)
    throw ConfigError("tcp.handshake_rounds must be >= 0");
  if (params.max_retries_per_round < 0)
    throw ConfigError("tcp.max_retries_per_round must be >= 0");
}

double sample_delay(const WanParams& link, RngStream& rng) {
  if (link.jitter_ms <= 0) return link.latency_ms;
  double d = rng.normal(link.latency_ms, link.jitter_ms);
  return d < 0 ? 0.0 : d;
}

namespace {

uint64_t segments_for(uint64_t bytes, const TransferModelParams& params) {
  uint64_t mss = static_cast<uint64_t>(params.mss_bytes);
  return (bytes + mss - 1) / mss;
}

// Retry rounds for one base round exposing k segments. The retransmitted
// round carries the expected lost count, never below one segment.
int retry_rounds(double k, double loss_prob, int cap, RngStream& rng) {
  int extra = 0;
  while (extra < cap) {
    double p_round = 1.0 - std::pow(1.0 - loss_prob, k);
    if (rng.uniform() < p_round) {
      ++extra;
      k = std::max(1.0, k * loss_prob);
    } else {
      break;
    }
  }
  return extra;
}

}  // namespace

int rounds_for(uint64_t bytes, const TransferModelParams& params) {
  validate(params);
  uint64_t segs = segments_for(bytes, params);
  uint64_t window = static_cast<uint64_t>(params.init_window_segs);
  int rounds = 1;
  while (window < segs) {
    window <<= 1;
    ++rounds;
  }
  return rounds;
}

int transfer_rounds_with_loss(uint64_t bytes, const WanParams& link,
                              const TransferModelParams& params,
                              RngStream& rng) {
  int base = rounds_for(bytes, params);
  if (link.loss_pct <= 0) return base;
  double prob = link.loss_pct / 100.0;
  uint64_t segs = segments_for(bytes, params);
  uint64_t remaining = segs;
  uint64_t window = static_cast<uint64_t>(params.init_window_segs);
  int total = base;
  for (int i = 0; i < base; ++i) {
    uint64_t carried = std::min(window, remaining);
    double exposed = static_cast<double>(std::max<uint64_t>(1, carried));
    total += retry_rounds(exposed, prob, params.max_retries_per_round, rng);
    remaining -= carried;
    window <<= 1;
  }
  return total;
}

int persistent_rounds_with_loss(uint64_t bytes, const WanParams& link,
                                const TransferModelParams& params,
                                RngStream& rng) {
  validate(params);
  if (link.loss_pct <= 0) return 1;
  double prob = link.loss_pct / 100.0;
  double exposed =
      static_cast<double>(std::max<uint64_t>(1, segments_for(bytes, params)));
  return 1 + retry_rounds(exposed, prob, params.max_retries_per_round, rng);
}

double external_exchange_ms(uint64_t req_bytes, uint64_t resp_bytes,
                            const WanParams& link,
                            const TransferModelParams& params,
                            NetStreams& streams) {
  validate(link, "external link");
  int t_req = transfer_rounds_with_loss(req_bytes, link, params, streams.loss);
  int t_resp =
      transfer_rounds_with_loss(resp_bytes, link, params, streams.loss);
  // The request's last round trip carries the first response segments.
  int rounds = params.handshake_rounds + t_req + t_resp - 1;
  double total = 0.0;
  for (int i = 0; i < rounds; ++i) total += sample_delay(link, streams.ext_delay);
  return total;
}

double internal_exchange_ms(uint64_t req_bytes, uint64_t resp_bytes,
                            const WanParams& link,
                            const TransferModelParams& params,
                            NetStreams& streams) {
  validate(link, "internal link");
  int t_req = persistent_rounds_with_loss(req_bytes, link, params, streams.loss);
  int t_resp =
      persistent_rounds_with_loss(resp_bytes, link, params, streams.loss);
  int rounds = t_req + t_resp - 1;
  double total = 0.0;
  for (int i = 0; i < rounds; ++i) total += sample_delay(link, streams.int_delay);
  return total;
}

double request_network_time(const WanParams& ext,
                            const std::vector<WanParams>& int_hops,
                            uint64_t req_bytes, uint64_t resp_bytes,
                            const TransferModelParams& params,
                            NetStreams& streams) {
  double total = external_exchange_ms(req_bytes, resp_bytes, ext, params, streams);
  for (const auto& hop : int_hops)
    total += internal_exchange_ms(req_bytes, resp_bytes, hop, params, streams);
  return total;
}

}  // namespace faasbench
