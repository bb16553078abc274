#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "qho/grid.hpp"
#include "qho/quadrature.hpp"

using namespace qho;
using Catch::Approx;

TEST_CASE("grid function validation", "[grid]") {
    CHECK_THROWS_AS(GridFunction({0.0, 1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(GridFunction({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(GridFunction({0.0, 1.0}, {1.0, std::nan("")}), DomainError);
    CHECK_THROWS_AS(GridFunction({0.0, 1.0}, {0.5, 1.0}, Parity::odd), DomainError);
    CHECK_NOTHROW(GridFunction({0.0, 1.0}, {0.0, 1.0}, Parity::odd));
}

TEST_CASE("cubic interpolation is exact for cubics", "[grid]") {
    const auto x = arange(0.0, 3.0, 0.3);
    auto p = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t * t; };
    const GridFunction g(x, sample(p, x));
    for (double t = 0.0; t <= 3.0; t += 0.07) CHECK(g(t) == Approx(p(t)).margin(1e-12));
    CHECK(g(3.5) == 0.0);
}

TEST_CASE("grid helpers", "[grid]") {
    const auto s = symmetric_grid(1.0, 0.25);
    REQUIRE(s.size() == 9);
    CHECK(s[4] == 0.0);
    CHECK(s.front() == -s.back());
    CHECK(arange(0.0, 1.0, 0.1).size() == 11);
    CHECK(linspace(0.0, 2.0, 5)[2] == 1.0);
    const auto x = linspace(0.0, 1.0, 101);
    CHECK(trapezoid(x, sample([](double t) { return t; }, x)) == Approx(0.5));
}

TEST_CASE("finite difference weights", "[grid]") {
    const std::vector<double> x = {0.0, 0.1, 0.2, 0.3, 0.4};
    const auto w = fd_weights(0.0, x, 2);
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d1 += w[1][i] * std::exp(x[i]);
        d2 += w[2][i] * std::exp(x[i]);
    }
    CHECK(d1 == Approx(1.0).epsilon(1e-4));
    CHECK(d2 == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("config validation", "[quadrature]") {
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.truncation_radius = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.max_subdivisions = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("adaptive integration of smooth and peaked integrands", "[quadrature]") {
    auto r = adaptive_integrate([](double x) { return std::sin(x); }, {0.0, std::numbers::pi}, 0.0, 1e-12, 200);
    CHECK(r.converged);
    CHECK(r.value == Approx(2.0).epsilon(1e-12));
    auto peak = adaptive_integrate([](double x) { return 1.0 / (1e-4 + x * x); }, {-1.0, 1.0}, 0.0, 1e-10, 500);
    CHECK(peak.value == Approx(2.0 * std::atan(100.0) * 100.0).epsilon(1e-9));
}

TEST_CASE("power singularities at the origin", "[quadrature]") {
    auto f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    auto r = integrate_from_origin(f, uniform_breaks(40.0, 1.0), 0.0, 1e-10, 2000);
    CHECK(r.value == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-9));
    CHECK(origin_exponent(f) == Approx(-0.5).margin(1e-6));
    CHECK(regular_exponent(origin_exponent([](double x) { return x * x; })));
    CHECK_THROWS_AS(integrate_from_origin([](double x) { return 1.0 / x; }, {0.0, 1.0}, 0.0, 1e-8, 100),
                    SingularityTooStrong);
}

TEST_CASE("half-line integrals", "[quadrature]") {
    QuadratureConfig cfg;
    CHECK(integrate_half_line([](double x) { return std::exp(-x * x); }, cfg).value ==
          Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
    // 1/(1+x^2) has a heavy tail that the mapped integral picks up
    CHECK(integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); }, cfg).value ==
          Approx(0.5 * std::numbers::pi).epsilon(1e-8));
    CHECK_THROWS_AS(integrate_half_line([](double x) { return std::exp(x); }, cfg), TailNotDecayed);
    CHECK(integrate_half_line([](double) { return 0.0; }, cfg).value == 0.0);
}

TEST_CASE("decay check on samples", "[quadrature]") {
    QuadratureConfig cfg;
    const auto x = arange(0.0, 5.0, 0.01);
    const GridFunction slow(x, sample([](double t) { return std::exp(-t); }, x));
    CHECK_THROWS_AS(require_decay(half_line_mass(slow, cfg), cfg), TailNotDecayed);
    const GridFunction fast(x, sample([](double t) { return std::exp(-t * t); }, x));
    CHECK_NOTHROW(require_decay(half_line_mass(fast, cfg), cfg));
}

TEST_CASE("oscillatory panels", "[quadrature]") {
    const auto b = cap_panels({0.0, 1.0}, oscillation_cap(40.0));
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] - b[i - 1] <= std::numbers::pi / 160.0 + 1e-15);
    QuadratureConfig cfg;
    // int_0^inf e^{-x} cos(kx) = 1/(1+k^2)
    cfg.truncation_radius = 40.0;
    for (double k : {0.5, 5.0, 30.0}) {
        auto r = fourier_integral([](double x) { return std::exp(-x); }, TransformKind::cosine, k, 1e-12, cfg);
        CHECK(r.value == Approx(1.0 / (1.0 + k * k)).margin(1e-10));
    }
    CHECK(fourier_integral([](double) { return 1.0; }, TransformKind::sine, 0.0, 1e-12, cfg).value == 0.0);
}
