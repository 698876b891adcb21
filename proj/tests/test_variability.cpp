#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "genlaw/distributions.hpp"
#include "genlaw/law.hpp"
#include "genlaw/variability.hpp"

using genlaw::LawParams;

namespace {

std::vector<double> one_to(int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1.0);
    return v;
}

}  // namespace

TEST_CASE("truncate by hand-sliced oracle") {
    auto s = one_to(100);
    std::shuffle(s.begin(), s.end(), std::mt19937_64(3));
    const auto t = genlaw::truncate(s, 0.01);
    REQUIRE(t.size() == 98);
    CHECK(t.front() == 2.0);
    CHECK(t.back() == 99.0);
    CHECK(std::is_sorted(t.begin(), t.end()));

    const std::vector<double> small{3, 1, 2};
    CHECK(genlaw::truncate(small, 0.1) == std::vector<double>{1, 2, 3});

    const std::vector<double> flat{5, 5, 5, 5};
    CHECK(genlaw::truncate(flat, 0.2) == flat);

    CHECK_THROWS_AS(genlaw::truncate(std::vector<double>{}, 0.1), std::domain_error);
    CHECK_THROWS_AS(genlaw::truncate(small, 0.0), std::domain_error);
    CHECK_THROWS_AS(genlaw::truncate(small, 0.5), std::domain_error);
}

TEST_CASE("r_delta examples") {
    CHECK(genlaw::r_delta(one_to(100), 0.01) == doctest::Approx(49.5).epsilon(1e-15));
    CHECK(genlaw::r_delta(std::vector<double>(10, 7.0), 0.01) == 1.0);
}

TEST_CASE("r_delta of lognormal samples matches the quantile ratio") {
    const genlaw::NormalLogModel m(7.2170, 1.8316);
    const auto logs = genlaw::sample(m, 1000000, 99);
    std::vector<double> s(logs.size());
    std::transform(logs.begin(), logs.end(), s.begin(), [](double x) { return std::exp(x); });
    const double r = genlaw::r_delta(s, 0.01);
    CHECK(std::abs(r / 5022.0 - 1.0) < 0.05);
}

TEST_CASE("variability result") {
    const auto v = genlaw::variability(LawParams(2, 5), one_to(100), 0.01);
    CHECK(v.n_removed_each_side == 1);
    CHECK(v.r_delta == doctest::Approx(49.5));
    CHECK(v.log_f_r == doctest::Approx(std::log2(49.5)));
    CHECK(v.meets_threshold);
    CHECK(v.delta == 0.01);

    const auto c = genlaw::variability(LawParams(32, 5), one_to(100), 0.01);
    CHECK(c.log_f_r == doctest::Approx(std::log(49.5) / std::log(32.0)));
    CHECK_FALSE(c.meets_threshold);
}

TEST_CASE("compliance expectation examples") {
    const auto us = genlaw::compliance_expectation(LawParams(2, 5), 3678.0, 1000000);
    CHECK(us.log_f_r == doctest::Approx(11.84).epsilon(1e-3));
    CHECK(us.meets_threshold);
    CHECK(us.long_enough);
    CHECK(us.expected_close);

    const auto quakes = genlaw::compliance_expectation(LawParams(32, 5), 629.0, 19509);
    CHECK(quakes.log_f_r == doctest::Approx(1.86).epsilon(2e-3));
    CHECK_FALSE(quakes.meets_threshold);
    CHECK_FALSE(quakes.expected_close);

    const auto flat = genlaw::compliance_expectation(LawParams(2, 5), 1.0, 1000);
    CHECK(flat.log_f_r == 0.0);
    CHECK_FALSE(flat.expected_close);

    const auto short_series = genlaw::compliance_expectation(LawParams(2, 5), 1e6, 499);
    CHECK(short_series.meets_threshold);
    CHECK_FALSE(short_series.long_enough);
    CHECK_FALSE(short_series.expected_close);

    const auto from_data = genlaw::compliance_expectation(LawParams(2, 5), one_to(1000));
    CHECK(from_data.long_enough);
    CHECK(from_data.log_f_r == doctest::Approx(std::log2(990.0 / 11.0)));
}

TEST_CASE("r_delta is scale invariant and non-increasing in delta") {
    std::mt19937_64 rng(8);
    std::lognormal_distribution<double> ln(1.0, 2.0);
    std::vector<double> s(5000);
    for (double& x : s) x = ln(rng);
    for (double c : {1e-6, 0.37, 3.0, 1e9}) {
        std::vector<double> cs(s);
        for (double& x : cs) x *= c;
        for (double delta : {0.001, 0.01, 0.1}) {
            CHECK(std::abs(genlaw::r_delta(cs, delta) / genlaw::r_delta(s, delta) - 1.0) < 1e-12);
        }
    }
    double prev = INFINITY;
    for (double delta = 0.0002; delta < 0.5; delta += 0.0101) {
        const double r = genlaw::r_delta(s, delta);
        CHECK(r <= prev);
        CHECK(r >= 1.0);
        prev = r;
    }
}

TEST_CASE("truncate is order-stable and idempotent at k = 0") {
    const std::vector<double> s{4, 1, 3, 1, 2};
    const auto t = genlaw::truncate(s, 0.1);
    CHECK(t == std::vector<double>{1, 1, 2, 3, 4});
    CHECK(genlaw::truncate(t, 0.1) == t);
}

TEST_CASE("SampleSeries overload keeps provenance") {
    genlaw::SampleSeries::Provenance prov;
    prov.source = "x.csv";
    const genlaw::SampleSeries s(one_to(10), prov);
    const auto t = genlaw::truncate(s, 0.1);
    CHECK(t.size() == 8);
    CHECK(t.provenance().source == "x.csv");
}
