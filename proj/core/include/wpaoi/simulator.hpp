#pragma once

#include "wpaoi/system_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wpaoi {

enum class scheme_kind { direct, df, af };
enum class success_mode { bernoulli, physical };

std::string to_string(scheme_kind s);

struct sim_config {
    scheme_kind scheme = scheme_kind::direct;
    system_params params{};

    // Exactly one of the two run lengths must be set.
    std::optional<std::uint64_t> horizon_slots;
    std::optional<std::uint64_t> target_deliveries;

    std::uint64_t seed = 1;
    double warmup_fraction = 0.1; // fraction of deliveries discarded, [0, 0.5]
    bool relay_energy_banking = false;
    std::uint64_t max_queue_alarm = 100'000;
    int replications = 10;
    int workers = 0; // 0: one thread per hardware core
    success_mode mode = success_mode::bernoulli;

    // Diagnostic overrides for the Bernoulli success draws; rejected in
    // physical mode.
    std::optional<double> force_p_suc_s;
    std::optional<double> force_p_suc_r;
    std::optional<double> force_p_suc_direct;
    std::optional<double> force_p_suc_af;

    // When set, df runs collect a histogram of per-packet service times
    // (cells 1..N-1, last cell overflow).
    std::size_t service_histogram_cells = 0;
};

struct link_counters {
    std::uint64_t attempts = 0;
    std::uint64_t successes = 0;
    double empirical() const
    {
        return attempts ? static_cast<double>(successes) / static_cast<double>(attempts) : 0.0;
    }
};

struct age_stats {
    double mean_aoi = 0.0;
    double mean_paoi = 0.0;
    double mean_paoi_second = 0.0; // second moment of the peak samples
    double ci95_aoi = 0.0;
    double ci95_paoi = 0.0;
    std::uint64_t deliveries = 0;
    std::uint64_t total_slots = 0;

    link_counters source_link; // direct: the only link; af: end-to-end
    link_counters relay_link;  // df only

    double mean_t_source = 0.0; // per-attempt recharge cycle, slots
    double mean_t_relay = 0.0;  // df: service cycles; af: relay crossing time
    double mean_t_af = 0.0;     // af: per-attempt max crossing time

    double mean_queue_len = 0.0;   // df
    double e_xs_w_estimate = 0.0;  // df: mean of X_s * W over deliveries
    double mean_xs = 0.0;          // df: mean interarrival at the relay
    double mean_y = 0.0;           // df: mean system time W + X_r
    double mean_w = 0.0;           // df: mean queue wait
    double mean_xr = 0.0;          // df: mean service time
    bool diverged = false;

    std::vector<std::uint64_t> service_histogram; // when requested
};

// Validates the config and runs `replications` independent slot-level
// replications; replication r draws from rng_stream::split(seed, r).
// Identical (config, seed) produce bit-identical results regardless of the
// worker count (aggregation is ordered by replication index).
age_stats run(const sim_config& config);

struct comparison_row {
    std::string metric;
    double analytic = 0.0;
    double simulated = 0.0;
    double std_error = 0.0;
    bool is_upper_bound = false; // pass means simulated <= analytic + 3 SE
    bool ok = false;
};

struct comparison_report {
    age_stats stats;
    std::vector<comparison_row> rows;
    bool all_ok = true;
};

// Side-by-side analytic vs empirical: link success probabilities, charge
// moments, cycle moments, PAoI (exact for direct/af, bound for df) and AoI
// (exact for direct/af, hybrid via the simulated E[X_s W] for df). Every
// equality row is flagged outside 3 SE; the df PAoI row checks
// simulated <= bound + 3 SE.
comparison_report validate_against_analysis(const sim_config& config);

} // namespace wpaoi
