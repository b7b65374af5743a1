#pragma once

#include "wpaoi/rng.hpp"
#include "wpaoi/specfun.hpp"

#include <cstdint>
#include <utility>

namespace wpaoi {

struct moment_pair {
    double mean = 0.0;
    double second = 0.0;
    double variance() const { return second - mean * mean; }
};

// Slots to fill one capacitor from empty: T = 1 + Poisson(B'), i.e.
// pmf(m) = B'^(m-1) e^-B' / (m-1)! on m = 1, 2, ...
class charge_time_dist {
public:
    explicit charge_time_dist(double bprime);

    double bprime() const { return bprime_; }

    double pmf(std::int64_t m) const;
    // P(T <= k) = Q(k, B').
    double cdf(std::int64_t k) const;
    // (1 + B', 1 + 3B' + B'^2).
    moment_pair moments() const;

    // Per-slot Exp(1) harvests accumulated to the first crossing. The draw
    // sequence matches the simulator's slot loop, so traces carry physically
    // meaningful per-slot energy.
    std::uint64_t sample(rng_stream& rng) const;
    // Shifted-Poisson fast path for throughput runs; same law, fewer logs.
    std::uint64_t sample_fast(rng_stream& rng) const;

private:
    double bprime_;
};

// Slots until BOTH capacitors are full: T = max(T_s, T_r), with
// CDF(k) = Q(k, B'_s) Q(k, B'_r).
class af_wait_dist {
public:
    af_wait_dist(double bprime_s, double bprime_r);

    double bprime_s() const { return source_.bprime(); }
    double bprime_r() const { return relay_.bprime(); }

    double cdf(std::int64_t k) const;
    // Product-CDF differencing; preferred numerically over the three-term
    // closed-form expansion (tests hold the latter as the cross-check).
    double pmf(std::int64_t m) const;

    // Tail sums: mean = sum_{i>=0} (1 - F(i)) and, since T >= 1 is integer,
    // E[T^2] = 2 sum_{i>=1} i (1 - F(i)) + E[T]. Verified against brute-force
    // series and Monte Carlo in the tests.
    moment_pair moments(specfun::tolerance tol = {}) const;

    std::uint64_t sample(rng_stream& rng) const;

private:
    charge_time_dist source_;
    charge_time_dist relay_;
};

} // namespace wpaoi
