#pragma once

#include "wpaoi/charging.hpp"
#include "wpaoi/system_model.hpp"

#include <optional>
#include <string>

namespace wpaoi {

// First two moments of the inter-success time X = sum of a geometric number
// of attempt cycles T:
//   E[X]  = E[T]/p
//   E[X^2] = E[T^2]/p + 2 E[T]^2 (1-p)/p^2
moment_pair cycle_moments(double t_mean, double t_second, double p_suc);

// Average PAoI of a one-hop renewal scheme: E[X].
double paoi_onehop(const moment_pair& x);

// Exact average AoI of a one-hop renewal scheme: (E[X^2]/E[X] + 1)/2.
double aoi_onehop(const moment_pair& x);

// Distribution-free upper bound on the mean FIFO waiting time,
// (var X_s + var X_r) / (2 (E[X_s] - E[X_r])). Throws unstable_queue when
// E[X_r] >= E[X_s].
double kingman_waiting_upper(const moment_pair& xs, const moment_pair& xr);

enum class bound_kind { exact, kingman_upper_bound };

struct paoi_result {
    std::optional<double> value;         // absent when the queue is unstable
    std::optional<double> kingman_bound; // upper-bound form, when stable
    std::string queue_label;
    double utilization = 0.0; // rho = E[X_r]/E[X_s]
    bound_kind kind = bound_kind::kingman_upper_bound;
    bool stable = false;
};

// Two-hop PAoI upper bound: E[X_s] + E[X_r] + Kingman bound. Instability is
// an error here; callers must not plot bound values in unstable regions.
paoi_result paoi_df_upper(const moment_pair& xs, const moment_pair& xr);

// Exact mean waiting time of the discrete-time FIFO queue with geometric
// interarrivals (success p_s per slot):
//   geo_geo (geometric service, p_r = 1/E[X_r]):
//       W = p_s (1 - p_r) / (p_r (p_r - p_s))
//   geo_g   (general service X_r):
//       W = (E[X_r^2] - E[X_r]) / (2 (1/p_s - E[X_r]))
// Both are the stationary Lindley solutions for integer-slot arrivals and
// services; validated against 1e7-slot queue simulations in the tests.
enum class exact_queue_kind { geo_geo, geo_g };
double waiting_exact(exact_queue_kind kind, double p_s, const moment_pair& xr);

// One special-case axis: is the node's capacitor instantly full, and is its
// transmission success deterministic?
struct special_case_spec {
    bool source_charging = false; // false: full capacitor
    bool source_random = false;   // false: deterministic success
    bool relay_charging = false;
    bool relay_random = false;
};

// Dispatcher over the sixteen DF special cases. Labels each case with its
// queue type, evaluates the stability predicate exactly, and returns the
// closed-form PAoI: the exact value where the queue admits one (Geo/Geo/1,
// Geo/G/1), the Kingman-bound form otherwise. Instability is a value here,
// not an error.
paoi_result special_case(const special_case_spec& spec, const derived_params& params);

// The four amplify-and-forward special cases:
//   (full, det) -> 1;  (full, random) -> 1/p_af;
//   (charging, det) -> E[T_AF];  (charging, random) -> E[T_AF]/p_af.
double af_special_case(bool capacitors_full, bool success_deterministic,
                       const derived_params& params, specfun::tolerance tol = {});

// Two-hop average AoI with the cross term supplied externally (estimated by
// the simulator): (E[X_s^2]/2 + E[X_s] E[X_r] + E[X_s W]) / E[X_s].
double aoi_df_hybrid(const moment_pair& xs, const moment_pair& xr, double e_xs_w);

// Attempt-cycle moments for one special-case axis; shared by the dispatcher
// and the reduction-consistency tests.
moment_pair special_case_x_moments(bool charging, bool random, double bprime, double p_suc);

} // namespace wpaoi
