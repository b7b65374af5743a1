#include "wpaoi/charging.hpp"

#include "wpaoi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wpaoi {

namespace {

void require_bprime(double b)
{
    if (!(b >= 0.0) || !std::isfinite(b))
        throw invalid_param("bprime", "must be finite and >= 0");
}

// Incremental evaluator for Q(i, x): Q(1,x) = e^-x, Q(i+1,x) = Q(i,x) + term_i
// with term_i = e^-x x^i / i! tracked in log form so large x never underflows
// the running state.
struct gamma_q_walker {
    explicit gamma_q_walker(double x_) : x(x_)
    {
        if (x == 0.0) {
            q = 1.0;
            log_term = -std::numeric_limits<double>::infinity();
        } else {
            log_term = -x;
            q = log_term > -745.0 ? std::exp(log_term) : 0.0;
        }
    }

    // advance from Q(i, x) to Q(i+1, x); i is the index of the term added
    void step(std::int64_t i)
    {
        if (x == 0.0)
            return;
        log_term += std::log(x) - std::log(static_cast<double>(i));
        if (log_term > -745.0)
            q += std::exp(log_term);
        if (q > 1.0)
            q = 1.0;
    }

    double x;
    double q;
    double log_term;
};

} // namespace

charge_time_dist::charge_time_dist(double bprime) : bprime_(bprime)
{
    require_bprime(bprime);
}

double charge_time_dist::pmf(std::int64_t m) const
{
    if (m < 1)
        throw domain_error("charge_time_dist::pmf: m must be >= 1");
    if (m == 1)
        return std::exp(-bprime_);
    if (bprime_ == 0.0)
        return 0.0;
    const double lp = static_cast<double>(m - 1) * std::log(bprime_) - bprime_
                      - specfun::log_factorial(m - 1);
    return lp < -745.0 ? 0.0 : std::exp(lp);
}

double charge_time_dist::cdf(std::int64_t k) const
{
    if (k < 1)
        throw domain_error("charge_time_dist::cdf: k must be >= 1");
    return specfun::regularized_gamma_q(k, bprime_);
}

moment_pair charge_time_dist::moments() const
{
    return {1.0 + bprime_, 1.0 + 3.0 * bprime_ + bprime_ * bprime_};
}

std::uint64_t charge_time_dist::sample(rng_stream& rng) const
{
    std::uint64_t m = 0;
    double acc = 0.0;
    do {
        acc += rng.next_exp();
        ++m;
    } while (acc < bprime_);
    return m;
}

std::uint64_t charge_time_dist::sample_fast(rng_stream& rng) const
{
    return 1 + rng.poisson(bprime_);
}

af_wait_dist::af_wait_dist(double bprime_s, double bprime_r)
    : source_(bprime_s), relay_(bprime_r)
{
}

double af_wait_dist::cdf(std::int64_t k) const
{
    return source_.cdf(k) * relay_.cdf(k);
}

double af_wait_dist::pmf(std::int64_t m) const
{
    if (m < 1)
        throw domain_error("af_wait_dist::pmf: m must be >= 1");
    if (m == 1)
        return cdf(1);
    return cdf(m) - cdf(m - 1);
}

moment_pair af_wait_dist::moments(specfun::tolerance tol) const
{
    const double bs = source_.bprime();
    const double br = relay_.bprime();
    gamma_q_walker qs(bs);
    gamma_q_walker qr(br);
    const double settle = std::max(bs, br) + 10.0;

    double s_tail = 0.0;  // sum (1 - F(i)), i >= 1
    double s_itail = 0.0; // sum i (1 - F(i)), i >= 1
    for (std::int64_t i = 1; i <= tol.max_terms; ++i) {
        const double tail = 1.0 - qs.q * qr.q;
        s_tail += tail;
        const double term = static_cast<double>(i) * tail;
        s_itail += term;
        if (static_cast<double>(i) > settle && term < tol.rel_eps * (1.0 + s_itail)) {
            const double mean = 1.0 + s_tail;
            return {mean, 2.0 * s_itail + mean};
        }
        qs.step(i);
        qr.step(i);
    }
    throw convergence_error("af_wait_dist::moments: term cap reached");
}

std::uint64_t af_wait_dist::sample(rng_stream& rng) const
{
    return std::max(source_.sample(rng), relay_.sample(rng));
}

} // namespace wpaoi
