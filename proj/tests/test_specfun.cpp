#include "wpaoi/specfun.hpp"

#include "wpaoi/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace wpaoi;
using specfun::bessel_k1;
using specfun::bessel_k1_scaled;
using specfun::log_factorial;
using specfun::regularized_gamma_p_series;
using specfun::regularized_gamma_q;

namespace {

// Independent high-precision reference values (40-digit evaluation, frozen
// before the implementation was written).
struct k1_ref {
    double x;
    double value;
};
constexpr k1_ref k_k1_refs[] = {
    {1e-06, 999999.99999278432422},
    {1e-05, 99999.999939355706916},
    {0.0001, 9999.999508686404478},
    {0.001, 999.99623815608555346},
    {0.01, 99.973894118296245561},
    {0.05, 19.909674325882505397},
    {0.1, 9.8538447808706055744},
    {0.25, 3.747025974440711638},
    {0.5, 1.6564411200033008937},
    {1.0, 0.60190723019723457474},
    {1.5, 0.27738780045684381609},
    {2.0, 0.13986588181652242728},
    {2.5, 0.073890816347747063649},
    {3.0, 0.040156431128194184377},
    {5.0, 0.0040446134454521642084},
    {8.0, 0.00015536921180500113392},
    {10.0, 1.8648773453825584597e-05},
    {15.0, 1.014172936976209181e-07},
    {20.0, 5.8830579695570381777e-10},
    {30.0, 2.1677320018915494249e-14},
};

} // namespace

TEST_SUITE("specfun")
{
    TEST_CASE("k1 matches the precomputed oracle to 1e-10")
    {
        for (const k1_ref& r : k_k1_refs) {
            const double got = bessel_k1(r.x);
            CHECK(std::abs(got - r.value) / r.value <= 1e-10);
        }
    }

    TEST_CASE("k1 small-argument limit x*K1(x) -> 1")
    {
        CHECK(std::abs(1e-8 * bessel_k1(1e-8) - 1.0) <= 1e-6);
    }

    TEST_CASE("k1 crossover at 2 is continuous")
    {
        const double below = bessel_k1(std::nextafter(2.0, 0.0));
        const double above = bessel_k1(std::nextafter(2.0, 3.0));
        CHECK(std::abs(below - above) / below <= 1e-10);
    }

    TEST_CASE("k1 scaled version agrees and survives large arguments")
    {
        for (double x : {0.5, 3.0, 50.0, 400.0}) {
            const double rel =
                std::abs(bessel_k1_scaled(x) - std::exp(x) * bessel_k1(x))
                / bessel_k1_scaled(x);
            CHECK(rel <= 1e-10);
        }
        CHECK(bessel_k1_scaled(5000.0) > 0.0);
        CHECK(std::isfinite(bessel_k1_scaled(5000.0)));
    }

    TEST_CASE("k1 positive and strictly decreasing")
    {
        double prev = bessel_k1(0.01);
        for (double x = 0.05; x < 30.0; x += 0.37) {
            const double v = bessel_k1(x);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }

    TEST_CASE("k1 rejects non-positive arguments")
    {
        CHECK_THROWS_AS(bessel_k1(0.0), domain_error);
        CHECK_THROWS_AS(bessel_k1(-1.0), domain_error);
    }

    TEST_CASE("gamma q examples")
    {
        for (std::int64_t k : {1, 2, 5, 17})
            CHECK(regularized_gamma_q(k, 0.0) == 1.0);
        CHECK(regularized_gamma_q(1, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-13));
        // hand sum: e^-2 (1 + 2 + 2)
        CHECK(regularized_gamma_q(3, 2.0)
              == doctest::Approx(0.67667641618306345947).epsilon(1e-13));
    }

    TEST_CASE("gamma q + independent lower series complement = 1")
    {
        for (std::int64_t k : {1, 2, 3, 7, 25, 80})
            for (double x : {0.0, 0.1, 1.0, 3.1415, 12.0, 60.0, 120.0}) {
                const double q = regularized_gamma_q(k, x);
                const double p = regularized_gamma_p_series(k, x);
                CHECK(std::abs(q + p - 1.0) <= 1e-12);
            }
    }

    TEST_CASE("gamma q monotone in x and k")
    {
        for (std::int64_t k : {1, 3, 9}) {
            double prev = 1.0;
            for (double x = 0.5; x < 25.0; x += 0.5) {
                const double q = regularized_gamma_q(k, x);
                CHECK(q <= prev + 1e-15);
                CHECK(q <= regularized_gamma_q(k + 1, x) + 1e-15);
                prev = q;
            }
        }
    }

    TEST_CASE("gamma q stays finite for very large x")
    {
        const double q = regularized_gamma_q(10, 2000.0);
        CHECK(q >= 0.0);
        CHECK(q < 1e-300);
        CHECK(regularized_gamma_q(2100, 2000.0) > 0.5); // mass near the mean
    }

    TEST_CASE("log factorial")
    {
        CHECK(log_factorial(0) == 0.0);
        CHECK(log_factorial(1) == 0.0);
        CHECK(log_factorial(5) == doctest::Approx(4.7874917427820459942).epsilon(1e-14));
        // table/lgamma seam
        CHECK(log_factorial(171)
              == doctest::Approx(log_factorial(170) + std::log(171.0)).epsilon(1e-12));
        CHECK_THROWS_AS(log_factorial(-1), domain_error);
    }
}
