#include "wpaoi/stats.hpp"

#include "wpaoi/errors.hpp"
#include "wpaoi/specfun.hpp"

#include <cmath>
#include <numeric>

namespace wpaoi {

double running_stats::std_error() const
{
    if (n_ < 2)
        return 0.0;
    return std::sqrt(variance() / static_cast<double>(n_));
}

chi_square_result chi_square_gof(const std::vector<std::uint64_t>& observed,
                                 const std::vector<double>& cell_probs)
{
    if (observed.size() != cell_probs.size() || observed.empty())
        throw invalid_param("chi_square_gof", "observed/probs size mismatch");

    const double n = static_cast<double>(
        std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));

    // Merge forward until every cell expects >= 5.
    std::vector<double> obs_m;
    std::vector<double> exp_m;
    double o_acc = 0.0;
    double e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += static_cast<double>(observed[i]);
        e_acc += n * cell_probs[i];
        if (e_acc >= 5.0) {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (!obs_m.empty()) {
            obs_m.back() += o_acc;
            exp_m.back() += e_acc;
        } else {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
        }
    }
    // Odd cell count -> even dof -> integer gamma shape.
    if (obs_m.size() >= 2 && obs_m.size() % 2 == 0) {
        obs_m[obs_m.size() - 2] += obs_m.back();
        exp_m[exp_m.size() - 2] += exp_m.back();
        obs_m.pop_back();
        exp_m.pop_back();
    }

    chi_square_result r;
    r.cells = static_cast<std::int64_t>(obs_m.size());
    r.dof = r.cells - 1;
    if (r.dof < 2) {
        r.dof = 0;
        r.p_value = 1.0;
        return r;
    }
    for (std::size_t i = 0; i < obs_m.size(); ++i) {
        const double d = obs_m[i] - exp_m[i];
        r.statistic += d * d / exp_m[i];
    }
    r.p_value = specfun::regularized_gamma_q(r.dof / 2, 0.5 * r.statistic);
    return r;
}

double ci95_half_width(const std::vector<double>& means)
{
    if (means.size() < 2)
        return 0.0;
    running_stats s;
    for (double m : means)
        s.add(m);
    return 1.959963984540054 * s.std_error();
}

double mean_of(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace wpaoi
