#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qho/specfun.hpp"

using namespace qho;
using namespace qho::specfun;
using Catch::Approx;

TEST_CASE("gamma at integers and half integers", "[specfun][gamma]") {
    CHECK(specfun::gamma(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(specfun::gamma(6.0) == Approx(120.0).epsilon(1e-14));
    CHECK(specfun::gamma(0.5) == Approx(1.772453850905516).epsilon(1e-13));
    CHECK(specfun::gamma(-0.5) == Approx(-2.0 * 1.772453850905516).epsilon(1e-13));
}

TEST_CASE("gamma poles", "[specfun][gamma]") {
    CHECK_THROWS_AS(specfun::gamma(-2.0), PoleError);
    CHECK_THROWS_AS(specfun::gamma(0.0), PoleError);
    CHECK(reciprocal_gamma(-3.0) == 0.0);
    CHECK(reciprocal_gamma(4.0) == Approx(1.0 / 6.0));
}

TEST_CASE("gamma recurrence on random arguments", "[specfun][gamma][property]") {
    std::mt19937 rng(12345u);
    std::uniform_real_distribution<double> dist(1e-3, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double z = dist(rng);
        CHECK(std::abs(specfun::gamma(z + 1.0) / specfun::gamma(z) - z) <= 1e-12 * z);
    }
}

TEST_CASE("gamma matches factorials across the range", "[specfun][gamma]") {
    double fact = 1.0;
    for (int n = 1; n < 30; ++n) {
        CHECK(specfun::gamma(n) == Approx(fact).epsilon(1e-13));
        fact *= n;
    }
    // reflection side
    for (double z : {-19.5, -7.25, -0.3})
        CHECK(specfun::gamma(z) * specfun::gamma(1.0 - z) == Approx(std::numbers::pi / std::sin(std::numbers::pi * z)).epsilon(1e-12));
}

TEST_CASE("kummer series examples", "[specfun][kummer]") {
    CHECK(kummer_series({3.0, 0.5, 0.0}) == 1.0);
    CHECK(kummer_series({-1.0, 0.5, 1.0}) == Approx(-1.0).margin(1e-15));
    CHECK(kummer_series({1.0, 1.0, 2.0}) == Approx(std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("kummer parameter validation", "[specfun][kummer]") {
    CHECK_THROWS_AS(kummer_series({1.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(kummer_series({1.0, -2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(kummer_series({0.3, 0.5, 60.0}, 5), NoConvergence);
}

TEST_CASE("terminating kummer series is a polynomial of degree n", "[specfun][kummer][property]") {
    for (int n = 0; n <= 6; ++n) {
        const double h = 0.25;
        const int m = n + 1;
        std::vector<double> v(static_cast<std::size_t>(m) + 1);
        for (int j = 0; j <= m; ++j) v[static_cast<std::size_t>(j)] = kummer_series({-double(n), 1.5, 0.5 + j * h});
        // forward differences of order n+1
        for (int order = 0; order < m; ++order)
            for (int j = 0; j + order < m; ++j) v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j) + 1] - v[static_cast<std::size_t>(j)];
        CHECK(std::abs(v[0]) <= 1e-10);
    }
}

TEST_CASE("kummer asymptotic form", "[specfun][kummer]") {
    CHECK(kummer_asymptotic({1.0, 1.0, 30.0}) == Approx(std::exp(30.0)).epsilon(1e-10));
    const double poly = kummer_series({-2.0, 0.5, 40.0});
    const double asym = kummer_asymptotic({-2.0, 0.5, 40.0});
    CHECK(std::abs(asym / poly - 1.0) <= 0.15);
    const double s = kummer_series({0.25, 0.5, 30.0});
    CHECK(std::abs(kummer_asymptotic({0.25, 0.5, 30.0}) / s - 1.0) <= 0.01);
    CHECK_THROWS_AS(kummer_asymptotic({0.25, 0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(kummer_asymptotic({0.25, 0.5, -3.0}), DomainError);
}

TEST_CASE("hermite examples", "[specfun][hermite]") {
    CHECK(hermite(0, 3.7) == 1.0);
    CHECK(hermite(2, 1.0) == 2.0);
    CHECK(hermite(3, 0.0) == 0.0);
    CHECK(hermite(4, 0.5) == Approx(16 * 0.0625 - 48 * 0.25 + 12));
}

TEST_CASE("hermite parity and values at the origin", "[specfun][hermite][property]") {
    for (int n = 0; n <= 20; ++n) {
        for (double x = 0.0; x <= 4.0; x += 0.37) {
            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            CHECK(hermite(n, -x) == Approx(sign * hermite(n, x)).epsilon(1e-13).margin(1e-12));
        }
    }
    const double h = 1e-5;
    for (int n = 0; n <= 8; ++n) {
        const double d = (hermite(2 * n, h) - hermite(2 * n, -h)) / (2 * h);
        CHECK(std::abs(d) <= 1e-8);
        CHECK(hermite(2 * n + 1, 0.0) == 0.0);
    }
}

TEST_CASE("laguerre examples", "[specfun][laguerre]") {
    CHECK(laguerre(0, -0.5, 2.2) == 1.0);
    CHECK(laguerre(1, -0.5, 1.0) == Approx(-0.5));
    CHECK(laguerre(1, 0.5, 0.0) == Approx(1.5));
    CHECK_THROWS_AS(laguerre(2, 0.5, -1.0), DomainError);
}

namespace {

/// Spread of ratio(x) over a grid, relative to the ratio at the first usable point.
template <class Num, class Den>
double ratio_spread(Num num, Den den) {
    double ref = 0.0;
    bool have = false;
    double spread = 0.0;
    for (double x = 0.05; x <= 3.0; x += 0.05) {
        const double d = den(x);
        if (std::abs(d) < 1e-6) continue;
        const double r = num(x) / d;
        if (!have) {
            ref = r;
            have = true;
        }
        spread = std::max(spread, std::abs(r / ref - 1.0));
    }
    return spread;
}

}  // namespace

TEST_CASE("hermite and laguerre are proportional", "[specfun][property]") {
    for (int n = 0; n <= 8; ++n) {
        CHECK(ratio_spread([n](double x) { return hermite(2 * n, x); },
                           [n](double x) { return laguerre(n, -0.5, x * x); }) <= 1e-9);
        CHECK(ratio_spread([n](double x) { return hermite(2 * n + 1, x); },
                           [n](double x) { return x * laguerre(n, 0.5, x * x); }) <= 1e-9);
    }
}

TEST_CASE("terminating kummer series are proportional to hermite", "[specfun][property]") {
    for (int n = 0; n <= 10; ++n) {
        if (n % 2 == 0) {
            CHECK(ratio_spread([n](double x) { return hermite(n, x); },
                               [n](double x) { return kummer_series({-0.5 * n, 0.5, x * x}); }) <= 1e-9);
        } else {
            CHECK(ratio_spread([n](double x) { return hermite(n, x); },
                               [n](double x) { return x * kummer_series({-0.5 * (n - 1), 1.5, x * x}); }) <= 1e-9);
        }
    }
}
