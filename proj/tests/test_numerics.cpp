#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "genlaw/numerics.hpp"
#include "oracles.hpp"

namespace num = genlaw::numerics;

TEST_CASE("simpson integrates cubics exactly") {
    const auto cubic = [](double x) { return 3 * x * x * x - x + 2; };
    CHECK(num::simpson(cubic, -1.0, 2.0, 2) == doctest::Approx(3 * 15.0 / 4 - 1.5 + 6));
}

TEST_CASE("simpson_refined converges on smooth integrands") {
    const auto r = num::simpson_refined([](double x) { return std::exp(-x * x); }, -10, 10);
    CHECK(r.converged);
    CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) < 1e-12);

    const auto osc = num::simpson_refined([](double x) { return std::sin(50 * x) * std::sin(50 * x); },
                                             0, std::numbers::pi, 16);
    CHECK(osc.converged);
    CHECK(std::abs(osc.value - std::numbers::pi / 2) < 1e-9);
    CHECK(osc.intervals > 16);
}

TEST_CASE("normal cdf, sf and pdf") {
    CHECK(num::normal_cdf(0.0) == 0.5);
    CHECK(num::normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));
    for (double z = -8; z <= 8; z += 0.25) {
        CHECK(std::abs(num::normal_cdf(z) - oracle::phi(z)) < 1e-15);
        CHECK(num::normal_cdf(z) + num::normal_sf(z) == doctest::Approx(1.0));
    }
    CHECK(num::normal_sf(30.0) > 0.0);
    CHECK(num::normal_sf(30.0) == doctest::Approx(4.906713927147908e-198).epsilon(1e-10));
}

TEST_CASE("normal_quantile inverts the cdf") {
    CHECK(std::abs(num::normal_quantile(0.99) - 2.3263478740408408) < 1e-12);
    CHECK(num::normal_quantile(0.5) == 0.0);
    for (double q : {1e-300, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.97575, 0.999}) {
        const double z = num::normal_quantile(q);
        CHECK(std::abs(oracle::phi(z) - q) <= 1e-12 * q + 1e-300);
        if (q > 1e-15) CHECK(num::normal_quantile(1.0 - q) == doctest::Approx(-z).epsilon(1e-9));
    }
    CHECK_THROWS_AS(num::normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(num::normal_quantile(1.0), std::domain_error);
}

TEST_CASE("|Gamma(1 + ib)| from the reflection identity") {
    CHECK(num::gamma_one_plus_i_abs(0.0) == 1.0);
    CHECK(num::gamma_one_plus_i_abs(1.0) == doctest::Approx(0.5215640).epsilon(1e-7));
    CHECK(num::gamma_one_plus_i_abs(-1.0) == num::gamma_one_plus_i_abs(1.0));
    // Gamma(1+ib) = integral over u of exp(ibu) exp(u - e^u), with t = e^u
    for (double b : {0.3, 2.0, 5.0}) {
        const auto w = [](double u) { return std::exp(u - std::exp(u)); };
        const double re = oracle::simpson([&](double u) { return std::cos(b * u) * w(u); }, -40.0, 5.0, 200000);
        const double im = oracle::simpson([&](double u) { return std::sin(b * u) * w(u); }, -40.0, 5.0, 200000);
        CHECK(num::gamma_one_plus_i_abs(b) == doctest::Approx(std::hypot(re, im)).epsilon(1e-10));
    }
    // far tail stays finite and positive
    CHECK(num::gamma_one_plus_i_abs(400.0) > 0.0);
    CHECK(std::log(num::gamma_one_plus_i_abs(400.0)) ==
          doctest::Approx(0.5 * std::log(2 * std::numbers::pi * 400.0) - std::numbers::pi * 200.0));
}

TEST_CASE("sine integral") {
    CHECK(num::sine_integral(0.0) == 0.0);
    CHECK(num::sine_integral(1.0) == doctest::Approx(0.946083070367183).epsilon(1e-13));
    CHECK(num::sine_integral(10.0) == doctest::Approx(1.658347594218874).epsilon(1e-13));
    CHECK(num::sine_integral(-10.0) == -num::sine_integral(10.0));
    // both sides of the switch to the asymptotic expansion
    CHECK(num::sine_integral(39.9999) == doctest::Approx(1.5869832564861903).epsilon(1e-13));
    CHECK(num::sine_integral(40.0001) == doctest::Approx(1.5869869820519868).epsilon(1e-13));
    CHECK(num::sine_integral(45.0) == doctest::Approx(1.5587150008964128).epsilon(1e-13));
    CHECK(num::sine_integral(100.0) == doctest::Approx(1.562225466889056).epsilon(1e-13));
    CHECK(num::sine_integral(1e6) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-5));
}
