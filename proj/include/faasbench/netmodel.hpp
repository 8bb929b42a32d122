#pragma once

#include <cstdint>
#include <vector>

#include "faasbench/rng.hpp"
#include "faasbench/scenario.hpp"

namespace faasbench {

struct TransferModelParams {
  int mss_bytes = 1460;
  int init_window_segs = 10;
  int handshake_rounds = 0;
  int max_retries_per_round = 5;
};

void validate(const TransferModelParams& params);

// One stream per concern so the draw count of one concern never shifts
// another's sequence.
struct NetStreams {
  RngStream ext_delay;
  RngStream int_delay;
  RngStream loss;

  explicit NetStreams(uint64_t seed)
      : ext_delay(seed, "ext-delay"),
        int_delay(seed, "int-delay"),
        loss(seed, "loss") {}
};

// Normal(latency, jitter) clamped at 0; jitter <= 0 consumes no randomness
// and returns latency exactly.
double sample_delay(const WanParams& link, RngStream& rng);

// Round trips to push `bytes` through a fresh connection with slow-start
// window doubling. 1 covers [0, mss*init_window] bytes.
int rounds_for(uint64_t bytes, const TransferModelParams& params);

// rounds_for plus loss-driven retransmission rounds. Zero loss consumes no
// randomness and equals rounds_for exactly.
int transfer_rounds_with_loss(uint64_t bytes, const WanParams& link,
                              const TransferModelParams& params,
                              RngStream& rng);

// Rounds on an established connection: the window never resets, so any size
// is one base round plus loss retries.
int persistent_rounds_with_loss(uint64_t bytes, const WanParams& link,
                                const TransferModelParams& params,
                                RngStream& rng);

// Client<->gateway exchange on a fresh connection: handshake + request +
// response round trips, each charged one sampled delay.
double external_exchange_ms(uint64_t req_bytes, uint64_t resp_bytes,
                            const WanParams& link,
                            const TransferModelParams& params,
                            NetStreams& streams);

// Gateway<->worker or worker<->worker exchange on a persistent connection;
// covers both directions.
double internal_exchange_ms(uint64_t req_bytes, uint64_t resp_bytes,
                            const WanParams& link,
                            const TransferModelParams& params,
                            NetStreams& streams);

// External segment plus every internal hop for one request/response pair.
double request_network_time(const WanParams& ext,
                            const std::vector<WanParams>& int_hops,
                            uint64_t req_bytes, uint64_t resp_bytes,
                            const TransferModelParams& params,
                            NetStreams& streams);

}  // namespace faasbench
