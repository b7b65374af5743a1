#include "wpaoi/system_model.hpp"

#include "wpaoi/errors.hpp"
#include "wpaoi/specfun.hpp"

#include <cmath>

namespace wpaoi {

namespace {

void require_positive(double v, const char* field)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw invalid_param(field, "must be finite and > 0");
}

} // namespace

system_params validate(const system_params& raw)
{
    require_positive(raw.p_t, "p_t");
    require_positive(raw.eta, "eta");
    if (raw.eta > 1.0)
        throw invalid_param("eta", "must be <= 1");
    require_positive(raw.sigma2, "sigma2");
    require_positive(raw.alpha, "alpha");
    require_positive(raw.d_sp, "d_sp");
    require_positive(raw.d_rp, "d_rp");
    require_positive(raw.d_rs, "d_rs");
    require_positive(raw.d_dr, "d_dr");
    require_positive(raw.d_ds, "d_ds");
    require_positive(raw.b_s, "b_s");
    require_positive(raw.b_r, "b_r");
    require_positive(raw.gamma_th, "gamma_th");
    if (!(raw.c_p >= 0.0) || !std::isfinite(raw.c_p))
        throw invalid_param("c_p", "must be finite and >= 0");
    return raw;
}

double normalized_capacitor(double d, double alpha, double b, double eta, double p_t)
{
    require_positive(d, "d");
    require_positive(alpha, "alpha");
    require_positive(b, "b");
    require_positive(eta, "eta");
    require_positive(p_t, "p_t");
    return std::pow(d, alpha) * b / (eta * p_t);
}

double success_probability(double sigma2, double gamma_th, double d, double alpha, double b)
{
    if (!(b > 0.0))
        throw relay_power_infeasible("success_probability: transmit energy must be > 0");
    const double expo = sigma2 * gamma_th * std::pow(d, alpha) / b;
    return std::exp(-expo);
}

double effective_relay_power(double b_r, double c_p, double p_suc_s)
{
    if (c_p == 0.0)
        return b_r;
    if (!(p_suc_s > 0.0))
        throw relay_power_infeasible("p_suc_s = 0 with positive processing cost");
    const double b_star = b_r - c_p / p_suc_s;
    if (!(b_star > 0.0))
        throw relay_power_infeasible("effective relay power B*_r <= 0");
    return b_star;
}

double success_prob_af(const system_params& p)
{
    const double drs_a = std::pow(p.d_rs, p.alpha);
    const double ddr_a = std::pow(p.d_dr, p.alpha);
    const double expo = p.gamma_th * p.sigma2 * (drs_a / p.b_s + ddr_a / p.b_r);
    const double beta =
        4.0 * p.sigma2 * p.sigma2 * p.gamma_th * (p.gamma_th + 1.0) * drs_a * ddr_a / (p.b_s * p.b_r);
    if (beta == 0.0)
        return std::exp(-expo); // x K1(x) -> 1
    const double sb = std::sqrt(beta);
    // p = exp(-expo) * sb * K1(sb) = exp(-expo - sb + ln(sb * e^sb K1(sb)))
    const double log_p = -expo - sb + std::log(sb * specfun::bessel_k1_scaled(sb));
    return log_p < -745.0 ? 0.0 : std::exp(log_p);
}

double expected_retransmissions(double p_suc)
{
    if (!(p_suc > 0.0))
        throw divide_by_zero_prob("expected_retransmissions: p_suc must be > 0");
    if (p_suc > 1.0)
        throw invalid_param("p_suc", "must be <= 1");
    return 1.0 / p_suc;
}

derived_params derive(const system_params& raw)
{
    const system_params p = validate(raw);
    derived_params d;
    d.bprime_s = normalized_capacitor(p.d_sp, p.alpha, p.b_s, p.eta, p.p_t);
    d.bprime_r = normalized_capacitor(p.d_rp, p.alpha, p.b_r, p.eta, p.p_t);
    d.p_suc_s = success_probability(p.sigma2, p.gamma_th, p.d_rs, p.alpha, p.b_s);
    d.b_star_r = effective_relay_power(p.b_r, p.c_p, d.p_suc_s);
    d.p_suc_r = success_probability(p.sigma2, p.gamma_th, p.d_dr, p.alpha, d.b_star_r);
    d.p_suc_direct = success_probability(p.sigma2, p.gamma_th, p.d_ds, p.alpha, p.b_s);
    d.p_suc_af = success_prob_af(p);
    return d;
}

} // namespace wpaoi
