#pragma once

#include "wpaoi/simulator.hpp"
#include "wpaoi/system_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wpaoi {

// One swept experiment point; params carry the full input set explicitly.
struct experiment_point {
    system_params params;
    double x_value = 0.0;
};

// A reproducible figure-style experiment: a sweep variable, a grid, and the
// schemes to run at every point. Knobs without a canonical value (absolute
// capacitor sizes, relay coordinates off the main axis) are pinned to
// documented choices; distances are always stored explicitly.
struct preset {
    std::string name;
    std::string description;
    std::string x_name; // "p_t" | "bs_over_br" | "alpha" | "gamma_th_db"
    std::vector<scheme_kind> schemes;
    std::vector<experiment_point> points;
    std::uint64_t fast_deliveries = 0;
    std::uint64_t full_deliveries = 0;
    int fast_replications = 0;
    int full_replications = 0;
};

std::vector<std::string> preset_names();
preset make_preset(const std::string& name); // throws invalid_param for unknown names

// Baseline inputs shared by every preset: sigma2 = 1, eta = 0.8, c_p = 0.01,
// unit power-station distances.
system_params preset_baseline();

} // namespace wpaoi
