#pragma once

#include "wpaoi/rng.hpp"

#include <cstdint>
#include <functional>

namespace wpaoi {

struct queue_sim_result {
    double mean_wait = 0.0;
    double mean_interarrival = 0.0;
    double mean_service = 0.0;
    std::uint64_t customers = 0;
};

// Discrete-time FIFO single-server queue via the Lindley recursion
//   W_{k+1} = max(0, W_k + S_k - A_{k+1}),
// which is exactly the relay-queue bookkeeping of the slot simulator
// (arrival at end of slot a, service starts the slot after
// max(arrival, previous completion)). Waiting means are taken over
// customers after the warmup prefix.
queue_sim_result simulate_lindley_queue(const std::function<std::uint64_t(rng_stream&)>& interarrival,
                                        const std::function<std::uint64_t(rng_stream&)>& service,
                                        std::uint64_t customers, double warmup_fraction,
                                        rng_stream rng);

// Geometric arrivals (success p_s per slot) and geometric services (p_r).
// `slots` is converted to an expected customer count p_s * slots.
queue_sim_result simulate_geo_geo_queue(double p_s, double p_r, std::uint64_t slots,
                                        std::uint64_t seed);

} // namespace wpaoi
