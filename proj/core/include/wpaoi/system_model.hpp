#pragma once

namespace wpaoi {

// Raw physical inputs. gamma_th is stored linear; dB conversion happens at
// the CLI boundary only.
struct system_params {
    double p_t = 1.0;     // power-station transmit power, linear
    double eta = 0.8;     // energy-transfer efficiency, (0, 1]
    double sigma2 = 1.0;  // noise variance, linear
    double alpha = 2.0;   // path-loss exponent
    double d_sp = 1.0;    // source <- power station
    double d_rp = 1.0;    // relay <- power station
    double d_rs = 6.0;    // relay <- source
    double d_dr = 4.0;    // destination <- relay
    double d_ds = 10.0;   // destination <- source
    double b_s = 1.0;     // source capacitor size / per-slot transmit energy
    double b_r = 1.0;     // relay capacitor size
    double gamma_th = 1.0; // SNR decoding threshold, linear
    double c_p = 0.0;     // per-decoding processing cost
};

// Scalars the analysis and simulator consume. Construction order:
// p_suc_s -> b_star_r -> p_suc_r.
struct derived_params {
    double bprime_s = 0.0;
    double bprime_r = 0.0;
    double p_suc_s = 1.0;
    double p_suc_r = 1.0;
    double p_suc_af = 1.0;
    double p_suc_direct = 1.0;
    double b_star_r = 0.0;
};

// Returns params unchanged if every invariant holds; throws invalid_param
// naming the offending field otherwise. Violations are rejected, not clamped.
system_params validate(const system_params& raw);

// B' = d^alpha * b / (eta * p_t).
double normalized_capacitor(double d, double alpha, double b, double eta, double p_t);

// exp(-sigma2 * gamma_th * d^alpha / b); evaluates the exponent first so the
// result underflows to an honest 0 rather than NaN.
double success_probability(double sigma2, double gamma_th, double d, double alpha, double b);

// B*_r = b_r - c_p / p_suc_s; throws relay_power_infeasible if <= 0.
double effective_relay_power(double b_r, double c_p, double p_suc_s);

// End-to-end success of the amplify-and-forward hop pair,
//   exp(-gamma sigma2 (d_rs^a/B_s + d_dr^a/B_r)) * sqrt(beta) K1(sqrt(beta)),
//   beta = 4 sigma2^2 gamma (gamma+1) d_rs^a d_dr^a / (B_s B_r).
// Composed in log space when the exponent is large; exact 0 is a legal value.
double success_prob_af(const system_params& p);

// 1 / p_suc (mean of the geometric attempt count).
double expected_retransmissions(double p_suc);

// validate + all derived scalars for the given inputs.
derived_params derive(const system_params& p);

} // namespace wpaoi
