#include "wpaoi/analysis.hpp"

#include "wpaoi/errors.hpp"

#include <cmath>

namespace wpaoi {

moment_pair cycle_moments(double t_mean, double t_second, double p_suc)
{
    if (!(p_suc > 0.0))
        throw divide_by_zero_prob("cycle_moments: p_suc must be > 0");
    if (p_suc > 1.0)
        throw invalid_param("p_suc", "must be <= 1");
    if (t_second < t_mean * t_mean)
        throw invalid_param("t_second", "second moment below mean^2");
    const double mean = t_mean / p_suc;
    const double second =
        t_second / p_suc + 2.0 * t_mean * t_mean * (1.0 - p_suc) / (p_suc * p_suc);
    return {mean, second};
}

double paoi_onehop(const moment_pair& x)
{
    return x.mean;
}

double aoi_onehop(const moment_pair& x)
{
    if (!(x.mean > 0.0))
        throw invalid_param("x.mean", "must be > 0");
    return 0.5 * (x.second / x.mean + 1.0);
}

double kingman_waiting_upper(const moment_pair& xs, const moment_pair& xr)
{
    if (!(xr.mean < xs.mean))
        throw unstable_queue("kingman_waiting_upper: E[X_r] >= E[X_s]");
    return (xs.variance() + xr.variance()) / (2.0 * (xs.mean - xr.mean));
}

paoi_result paoi_df_upper(const moment_pair& xs, const moment_pair& xr)
{
    paoi_result r;
    r.queue_label = "G/G/1";
    r.utilization = xr.mean / xs.mean;
    const double w = kingman_waiting_upper(xs, xr); // throws when unstable
    r.stable = true;
    r.kingman_bound = xs.mean + xr.mean + w;
    r.value = r.kingman_bound;
    r.kind = bound_kind::kingman_upper_bound;
    return r;
}

double waiting_exact(exact_queue_kind kind, double p_s, const moment_pair& xr)
{
    if (!(p_s > 0.0) || p_s > 1.0)
        throw invalid_param("p_s", "must be in (0, 1]");
    switch (kind) {
    case exact_queue_kind::geo_geo: {
        const double p_r = 1.0 / xr.mean;
        if (!(p_s < p_r))
            throw unstable_queue("waiting_exact geo_geo: requires p_s < p_r");
        return p_s * (1.0 - p_r) / (p_r * (p_r - p_s));
    }
    case exact_queue_kind::geo_g: {
        if (!(xr.mean < 1.0 / p_s))
            throw unstable_queue("waiting_exact geo_g: requires E[X_r] < 1/p_s");
        return (xr.second - xr.mean) / (2.0 * (1.0 / p_s - xr.mean));
    }
    }
    throw invalid_param("kind", "unknown queue kind");
}

moment_pair special_case_x_moments(bool charging, bool random, double bprime, double p_suc)
{
    const moment_pair t = charging ? charge_time_dist(bprime).moments() : moment_pair{1.0, 1.0};
    if (!random)
        return t;
    return cycle_moments(t.mean, t.second, p_suc);
}

namespace {

const char* axis_label(bool charging, bool random)
{
    if (!charging && !random)
        return "D";
    if (!charging && random)
        return "Geo";
    if (charging && !random)
        return "P";
    return "G";
}

} // namespace

paoi_result special_case(const special_case_spec& c, const derived_params& d)
{
    const double ps = d.p_suc_s;
    const double pr = d.p_suc_r;
    const double bs = d.bprime_s;
    const double br = d.bprime_r;

    const moment_pair xs = special_case_x_moments(c.source_charging, c.source_random, bs, ps);
    const moment_pair xr = special_case_x_moments(c.relay_charging, c.relay_random, br, pr);

    paoi_result r;
    r.queue_label = std::string(axis_label(c.source_charging, c.source_random)) + "/"
                    + axis_label(c.relay_charging, c.relay_random) + "/1";
    r.utilization = xr.mean / xs.mean;
    r.kind = bound_kind::kingman_upper_bound;

    const int src = (c.source_charging ? 2 : 0) + (c.source_random ? 1 : 0);
    const int rel = (c.relay_charging ? 2 : 0) + (c.relay_random ? 1 : 0);
    const int row = src * 4 + rel;

    // Stability predicates exactly as tabulated; three rows can never hold,
    // four always do. PAoI forms are the tabulated closed forms (all equal to
    // the general bound specialized to the row; the G/D/1 variance term is
    // var(X_r) = 0).
    switch (row) {
    case 0: // D/D/1: deterministic unit arrivals and service, nothing waits
        r.stable = true;
        r.value = 2.0;
        r.kingman_bound = 2.0;
        r.kind = bound_kind::exact;
        return r;
    case 1: // D/Geo/1: would need p_r > 1
    case 2: // D/P/1: would need B'_r < 0
    case 3: // D/G/1: would need E[X_r] < 1
        r.stable = false;
        return r;
    case 4: // Geo/D/1: p_s < 1 always
        r.stable = ps < 1.0;
        if (r.stable)
            r.kingman_bound = 3.0 / (2.0 * ps) + 1.0;
        r.value = r.kingman_bound;
        return r;
    case 5: // Geo/Geo/1
        r.stable = ps < pr;
        if (r.stable) {
            r.kingman_bound = (pr * pr * (3.0 - ps) - ps * ps * (1.0 + pr))
                              / (2.0 * ps * pr * (pr - ps));
            r.value = xs.mean + xr.mean + waiting_exact(exact_queue_kind::geo_geo, ps, xr);
            r.kind = bound_kind::exact;
        }
        return r;
    case 6: // Geo/P/1
        r.stable = 1.0 + br < 1.0 / ps;
        if (r.stable)
            r.kingman_bound = 1.0 / ps + (1.0 + br)
                              + ((1.0 - ps) / (ps * ps) + br)
                                    / (2.0 * (1.0 / ps - (1.0 + br)));
        r.value = r.kingman_bound;
        return r;
    case 7: // Geo/G/1
        r.stable = xr.mean < 1.0 / ps;
        if (r.stable) {
            r.kingman_bound = 1.0 / ps + xr.mean
                              + ((1.0 - ps) / (ps * ps) + xr.variance())
                                    / (2.0 * (1.0 / ps - xr.mean));
            r.value = xs.mean + xr.mean + waiting_exact(exact_queue_kind::geo_g, ps, xr);
            r.kind = bound_kind::exact;
        }
        return r;
    case 8: // P/D/1: B'_s > 0 always (charging)
        r.stable = bs > 0.0;
        if (r.stable)
            r.kingman_bound = 2.5 + bs;
        r.value = r.kingman_bound;
        return r;
    case 9: // P/Geo/1
        r.stable = 1.0 / pr < 1.0 + bs;
        if (r.stable)
            r.kingman_bound = (1.0 + bs) + 1.0 / pr
                              + (bs + (1.0 - pr) / (pr * pr))
                                    / (2.0 * ((1.0 + bs) - 1.0 / pr));
        r.value = r.kingman_bound;
        return r;
    case 10: // P/P/1
        r.stable = br < bs;
        if (r.stable)
            r.kingman_bound =
                (bs * (5.0 + 2.0 * bs) - br * (3.0 + 2.0 * br)) / (2.0 * (bs - br));
        r.value = r.kingman_bound;
        return r;
    case 11: // P/G/1
        r.stable = xr.mean < 1.0 + bs;
        if (r.stable)
            r.kingman_bound = (1.0 + bs) + xr.mean
                              + (bs + xr.variance()) / (2.0 * ((1.0 + bs) - xr.mean));
        r.value = r.kingman_bound;
        return r;
    case 12: // G/D/1: E[X_s] > 1 always
        r.stable = xs.mean > 1.0;
        if (r.stable)
            r.kingman_bound = xs.mean + 1.0 + xs.variance() / (2.0 * (xs.mean - 1.0));
        r.value = r.kingman_bound;
        return r;
    case 13: // G/Geo/1
        r.stable = 1.0 / pr < xs.mean;
        if (r.stable)
            r.kingman_bound = xs.mean + 1.0 / pr
                              + (xs.variance() + (1.0 - pr) / (pr * pr))
                                    / (2.0 * (xs.mean - 1.0 / pr));
        r.value = r.kingman_bound;
        return r;
    case 14: // G/P/1
        r.stable = 1.0 + br < xs.mean;
        if (r.stable)
            r.kingman_bound = xs.mean + (1.0 + br)
                              + (xs.variance() + br) / (2.0 * (xs.mean - (1.0 + br)));
        r.value = r.kingman_bound;
        return r;
    case 15: // G/G/1
        r.stable = xr.mean < xs.mean;
        if (r.stable)
            r.kingman_bound = xs.mean + xr.mean
                              + (xs.variance() + xr.variance())
                                    / (2.0 * (xs.mean - xr.mean));
        r.value = r.kingman_bound;
        return r;
    }
    throw invalid_param("spec", "unreachable special case");
}

double af_special_case(bool capacitors_full, bool success_deterministic,
                       const derived_params& d, specfun::tolerance tol)
{
    if (capacitors_full && success_deterministic)
        return 1.0;
    if (capacitors_full)
        return expected_retransmissions(d.p_suc_af);
    const double mean_taf = af_wait_dist(d.bprime_s, d.bprime_r).moments(tol).mean;
    if (success_deterministic)
        return mean_taf;
    return mean_taf * expected_retransmissions(d.p_suc_af);
}

// Unit-slope slotted sawtooth: the area between resets is
// (A(A+1) - B(B+1))/2 with peak A = X_s + Y and floor B = Y_prev, so the
// stationary mean carries a +1/2 on top of the continuous-time form, the
// same way the one-hop area X(X+1)/2 does.
double aoi_df_hybrid(const moment_pair& xs, const moment_pair& xr, double e_xs_w)
{
    if (!(xs.mean > 0.0))
        throw invalid_param("xs.mean", "must be > 0");
    return (xs.second / 2.0 + xs.mean * xr.mean + e_xs_w) / xs.mean + 0.5;
}

} // namespace wpaoi
