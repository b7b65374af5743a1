#include "wpaoi/queue_sim.hpp"

#include <algorithm>

namespace wpaoi {

queue_sim_result simulate_lindley_queue(const std::function<std::uint64_t(rng_stream&)>& interarrival,
                                        const std::function<std::uint64_t(rng_stream&)>& service,
                                        std::uint64_t customers, double warmup_fraction,
                                        rng_stream rng)
{
    queue_sim_result r;
    r.customers = customers;
    const std::uint64_t warm =
        static_cast<std::uint64_t>(warmup_fraction * static_cast<double>(customers));

    double w = 0.0;
    double wait_sum = 0.0;
    double a_sum = 0.0;
    double s_sum = 0.0;
    std::uint64_t counted = 0;
    std::uint64_t s_prev = service(rng);
    for (std::uint64_t k = 1; k < customers; ++k) {
        const std::uint64_t a = interarrival(rng);
        w = std::max(0.0, w + static_cast<double>(s_prev) - static_cast<double>(a));
        s_prev = service(rng);
        if (k >= warm) {
            wait_sum += w;
            a_sum += static_cast<double>(a);
            s_sum += static_cast<double>(s_prev);
            ++counted;
        }
    }
    if (counted > 0) {
        r.mean_wait = wait_sum / static_cast<double>(counted);
        r.mean_interarrival = a_sum / static_cast<double>(counted);
        r.mean_service = s_sum / static_cast<double>(counted);
    }
    return r;
}

queue_sim_result simulate_geo_geo_queue(double p_s, double p_r, std::uint64_t slots,
                                        std::uint64_t seed)
{
    const auto customers =
        static_cast<std::uint64_t>(p_s * static_cast<double>(slots));
    return simulate_lindley_queue([p_s](rng_stream& g) { return g.geometric(p_s); },
                                  [p_r](rng_stream& g) { return g.geometric(p_r); },
                                  customers, 0.1, rng_stream(seed));
}

} // namespace wpaoi
