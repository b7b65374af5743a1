#pragma once

#include "wpaoi/presets.hpp"
#include "wpaoi/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wpaoi::cli {

// Exit codes: 0 success, 1 model error, 2 config error, 3 selftest failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_model_error = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_selftest_failure = 3;

inline constexpr const char* tool_version = "1.0.0";

// Flat key = value text. '#' starts a comment. Keys carrying dB values use a
// _db suffix and are converted at this boundary only.
struct run_spec {
    system_params params;
    std::vector<scheme_kind> schemes;
    std::optional<std::uint64_t> horizon_slots;
    std::optional<std::uint64_t> target_deliveries;
    std::uint64_t seed = 1;
    double warmup_fraction = 0.1;
    int replications = 10;
    int workers = 0;
    bool relay_energy_banking = false;
    std::uint64_t max_queue_alarm = 100'000;
    success_mode mode = success_mode::bernoulli;
    std::optional<double> force_p_suc_s, force_p_suc_r, force_p_suc_direct, force_p_suc_af;
    std::optional<std::string> sweep_param;
    std::vector<double> sweep_values;
};

run_spec parse_config_text(const std::string& text); // throws invalid_param on bad keys
run_spec load_config_file(const std::string& path);

// FNV-1a over the canonical config text; embedded in the CSV header line.
std::uint64_t config_hash(const std::string& text);

// CSV emission. Fixed column order, floats with 12 significant digits, one
// '#' header comment carrying (seed, config hash, tool version).
void write_csv_header(std::ostream& os, std::uint64_t seed, std::uint64_t hash);

struct csv_row {
    scheme_kind scheme;
    system_params params;
    std::optional<double> paoi_analytic;
    std::string paoi_kind; // "exact" | "bound" | ""
    std::optional<double> aoi_analytic;
    std::optional<double> paoi_sim, aoi_sim, ci95_paoi, ci95_aoi;
    std::optional<double> p_suc_s, p_suc_r, p_suc_af, p_suc_direct;
    std::uint64_t deliveries = 0;
    bool diverged = false;
};

void write_csv_row(std::ostream& os, const csv_row& row);

// Analytic side of a row (exact for direct/af; Kingman bound for df; empty
// PAoI when the df queue is unstable).
csv_row analytic_row(scheme_kind scheme, const system_params& params);

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_path,
            std::optional<std::uint64_t> seed_override, std::optional<int> reps_override,
            bool fast);
int cmd_preset(const std::string& name, const std::optional<std::string>& out_path,
               std::optional<std::uint64_t> seed_override, std::optional<int> reps_override,
               bool fast);
int cmd_table1(const std::optional<std::string>& config_path,
               const std::optional<std::string>& out_path);
// Deterministic invariant suite; gates use fixed internal seeds so the
// verdict does not depend on --seed.
int cmd_selftest(std::ostream& os);

int dispatch(int argc, const char* const* argv);

} // namespace wpaoi::cli
