#pragma once

#include <cstdint>

namespace wpaoi::specfun {

// Termination policy for the truncated series used across the library.
struct tolerance {
    double rel_eps = 1e-12;
    std::int64_t max_terms = 1'000'000;
};

// Regularized upper incomplete gamma Q(k, x) = Gamma(k,x)/Gamma(k) for
// integer shape k >= 1:  Q(k,x) = e^-x * sum_{d=0}^{k-1} x^d/d!.
// Terms are accumulated through a log-tracked running product, so the sum
// stays finite for x well beyond the e^-x underflow point.
double regularized_gamma_q(std::int64_t k, double x);

// Complement P(k,x) = 1 - Q(k,x) summed independently (lower series).
// Exposed for cross-checks; not meant as the fast path.
double regularized_gamma_p_series(std::int64_t k, double x, tolerance tol = {});

// Modified Bessel function of the second kind, order one.
// x <= 2: ascending series with explicit digamma terms.
// x >  2: exp-scaled cosh-integral trapezoid rule (spectrally accurate).
// Relative error <= 1e-10 over (0, 700]; throws domain_error for x <= 0.
double bessel_k1(double x);

// e^x * K1(x); finite for arbitrarily large x. Needed when K1 itself
// underflows and the caller works with logarithms.
double bessel_k1_scaled(double x);

// ln(n!); exact cumulative table for n <= 170, lgamma above.
double log_factorial(std::int64_t n);

} // namespace wpaoi::specfun
