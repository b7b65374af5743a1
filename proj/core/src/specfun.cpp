#include "wpaoi/specfun.hpp"

#include "wpaoi/errors.hpp"

#include <array>
#include <cmath>

namespace wpaoi::specfun {

namespace {

constexpr double k_euler = 0.57721566490153286060651209008240243;

const std::array<double, 171>& log_factorial_table()
{
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        t[0] = 0.0;
        long double acc = 0.0L;
        for (int n = 1; n <= 170; ++n) {
            acc += std::log(static_cast<long double>(n));
            t[n] = static_cast<double>(acc);
        }
        return t;
    }();
    return table;
}

// K1 ascending series, x in (0, 2]:
//   K1(x) = ln(x/2) I1(x) + 1/x - (x/4) sum_k [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!)
// with q = x^2/4.
double k1_small(double x)
{
    const double q = 0.25 * x * x;

    double term = 1.0;
    double i1 = term;
    for (int k = 1; k <= 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        i1 += term;
        if (term < 1e-18 * i1)
            break;
    }
    i1 *= 0.5 * x;

    double psi1 = -k_euler;
    double psi2 = 1.0 - k_euler;
    term = 1.0;
    double s = psi1 + psi2;
    for (int k = 1; k <= 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        psi1 += 1.0 / k;
        psi2 += 1.0 / (k + 1);
        const double t = (psi1 + psi2) * term;
        s += t;
        if (std::abs(t) < 1e-18 * std::abs(s))
            break;
    }
    return std::log(0.5 * x) * i1 + 1.0 / x - 0.25 * x * s;
}

// e^x K1(x) = integral_0^inf exp(-x(cosh t - 1)) cosh t dt, trapezoid rule.
// The integrand is analytic and decays double-exponentially, so the
// trapezoid converges spectrally; the step shrinks with 1/sqrt(x) to track
// the saddle width.
double k1_scaled_quad(double x)
{
    const double h = std::min(0.18, 0.45 / std::sqrt(x));
    double s = 0.5; // t = 0 node, half weight
    for (double t = h;; t += h) {
        const double c = std::cosh(t);
        const double e = -x * (c - 1.0);
        if (e < -746.0)
            break;
        s += std::exp(e) * c;
    }
    return s * h;
}

} // namespace

double regularized_gamma_q(std::int64_t k, double x)
{
    if (k < 1)
        throw domain_error("regularized_gamma_q: shape must be >= 1");
    if (x < 0.0)
        throw domain_error("regularized_gamma_q: x must be >= 0");
    if (x == 0.0)
        return 1.0;

    // log-tracked term: ln(e^-x x^d / d!)
    const double lx = std::log(x);
    double lt = -x;
    double q = 0.0;
    for (std::int64_t d = 0; d < k; ++d) {
        if (lt > -745.0)
            q += std::exp(lt);
        lt += lx - std::log(static_cast<double>(d + 1));
    }
    return q < 1.0 ? q : 1.0;
}

double regularized_gamma_p_series(std::int64_t k, double x, tolerance tol)
{
    if (k < 1)
        throw domain_error("regularized_gamma_p_series: shape must be >= 1");
    if (x < 0.0)
        throw domain_error("regularized_gamma_p_series: x must be >= 0");
    if (x == 0.0)
        return 0.0;

    // P(k,x) = x^k e^-x / Gamma(k+1) * sum_{n>=0} x^n / prod_{j=1..n}(k+j),
    // compensated summation since the terms can climb for ~x-k steps
    const double lead = std::exp(static_cast<double>(k) * std::log(x) - x - log_factorial(k));
    double term = 1.0;
    double sum = term;
    double carry = 0.0;
    for (std::int64_t n = 1; n <= tol.max_terms; ++n) {
        term *= x / static_cast<double>(k + n);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        // geometric tail bound: remaining mass <= term * r/(1-r)
        const double r = x / static_cast<double>(k + n + 1);
        if (r < 1.0 && term * r / (1.0 - r) < tol.rel_eps * sum)
            return lead * sum;
    }
    throw convergence_error("regularized_gamma_p_series: term cap reached");
}

double bessel_k1(double x)
{
    if (!(x > 0.0))
        throw domain_error("bessel_k1: x must be > 0");
    if (x <= 2.0)
        return k1_small(x);
    const double s = k1_scaled_quad(x);
    return x < 745.0 ? std::exp(-x) * s : 0.0;
}

double bessel_k1_scaled(double x)
{
    if (!(x > 0.0))
        throw domain_error("bessel_k1_scaled: x must be > 0");
    if (x <= 2.0)
        return std::exp(x) * k1_small(x);
    return k1_scaled_quad(x);
}

double log_factorial(std::int64_t n)
{
    if (n < 0)
        throw domain_error("log_factorial: n must be >= 0");
    if (n <= 170)
        return log_factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace wpaoi::specfun
