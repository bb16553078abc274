#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qho/oscillator.hpp"

using namespace qho;
using namespace qho::oscillator;
using Catch::Approx;

namespace {

std::vector<double> k_grid() { return arange(kMinK, 8.0, 0.01); }

GridFunction half_line(int n, double spacing = 0.01, double radius = 6.0) {
    const auto kind = n % 2 == 0 ? TransformKind::cosine : TransformKind::sine;
    const auto z = arange(0.0, radius, spacing);
    std::vector<double> v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) v[i] = inversion_closed_form(n, kind, z[i]);
    return GridFunction(z, v, parity_of(kind));
}

}  // namespace

TEST_CASE("transformed ODE is solved for every exponent", "[oscillator]") {
    const auto k = k_grid();
    CHECK(transformed_ode_residual({0.0}, 0.5, k) <= 1e-12);
    CHECK(transformed_ode_residual({0.37}, 0.87, k) <= 1e-12);
    CHECK(transformed_ode_residual({-0.3}, 0.2, k) <= 1e-12);
    CHECK(transformed_ode_residual({0.0}, 1.5, k) >= 1e-3);
    std::mt19937 rng(2024u);
    std::uniform_real_distribution<double> dist(-0.4, 10.0);
    for (int i = 0; i < 50; ++i) {
        const CandidateExponent c{dist(rng)};
        CHECK(transformed_ode_residual(c, c.epsilon(), k) <= 1e-12);
    }
    const std::vector<double> bad = {0.0, 1.0};
    CHECK_THROWS_AS(transformed_ode_residual({1.0}, 1.5, bad), DomainError);
}

TEST_CASE("closed form of the transformed solution", "[oscillator]") {
    CHECK(phi_transform({2.0}, 1.0) == Approx(std::exp(-0.25)));
    CHECK(phi_transform({0.5}, 4.0) == Approx(2.0 * std::exp(-4.0)));
    CHECK_THROWS_AS(phi_transform({0.5}, 0.0), DomainError);
}

TEST_CASE("branches differ only by a constant phase", "[oscillator]") {
    for (double a : {0.3, 1.7, 2.0}) {
        for (int m = -2; m <= 2; ++m) {
            const CandidateExponent c{a, TransformKind::cosine, m};
            CHECK(std::abs(branch_phase(c)) == Approx(1.0).epsilon(1e-15));
            for (double k : {0.1, 1.0, 3.0})
                CHECK(std::abs(phi_transform_on_branch(c, k)) == Approx(phi_transform({a}, k)).epsilon(1e-15));
        }
    }
    CHECK(branch_phase({2.0, TransformKind::cosine, 1}) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("classification examples", "[oscillator]") {
    CHECK(classify_exponent({2.0, TransformKind::cosine}).accepted);
    const auto s = classify_exponent({2.0, TransformKind::sine});
    CHECK_FALSE(s.accepted);
    CHECK(s.reasons == std::vector<std::string>{"parity"});
    const auto p = classify_exponent({-0.7, TransformKind::cosine});
    CHECK_FALSE(p.accepted);
    CHECK_FALSE(p.parseval_ok);
    CHECK(p.moment_ok);
    CHECK(p.reasons.front() == "parseval");
    const auto h = classify_exponent({0.5, TransformKind::cosine});
    CHECK_FALSE(h.derivative_conditions_ok);
    CHECK(std::find(h.reasons.begin(), h.reasons.end(), "derivative_conditions") != h.reasons.end());
    CHECK_FALSE(classify_exponent({-1.5}).moment_ok);
    CHECK_FALSE(classify_exponent({-2.0}).accepted);
}

TEST_CASE("quantization over the scan", "[oscillator][property]") {
    for (auto kind : {TransformKind::cosine, TransformKind::sine}) {
        std::vector<double> accepted;
        for (double a : scan_points(-0.45, 6.05, 0.05))
            if (classify_exponent({a, kind}).accepted) accepted.push_back(a);
        if (kind == TransformKind::cosine)
            CHECK(accepted == std::vector<double>{0.0, 2.0, 4.0, 6.0});
        else
            CHECK(accepted == std::vector<double>{1.0, 3.0, 5.0});
    }
    CHECK_THROWS_AS(scan_points(1.0, 0.0, 0.1), DomainError);
    CHECK_THROWS_AS(scan_points(0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("inversion examples", "[oscillator]") {
    const std::vector<double> z = {0.0, 0.5, 1.0, 1.5, 2.0};
    const auto c0 = invert_candidate({0.0}, z);
    CHECK(c0.numeric.values()[2] / c0.numeric.values()[0] == Approx(std::exp(-1.0)).margin(1e-6));
    REQUIRE(c0.closed_form);
    CHECK(c0.mismatch <= 1e-6);

    const auto s1 = invert_candidate({1.0, TransformKind::sine}, z);
    CHECK(s1.numeric.values()[0] == 0.0);

    // 1 - 2 zeta^2 changes sign at 1/sqrt(2)
    const auto zz = arange(0.0, 2.0, 0.001);
    const auto c2 = invert_candidate({2.0}, zz);
    const auto& v = c2.numeric.values();
    std::size_t i = 0;
    while (i + 1 < v.size() && v[i] * v[i + 1] > 0.0) ++i;
    REQUIRE(i + 1 < v.size());
    const double root = zz[i] - v[i] * (zz[i + 1] - zz[i]) / (v[i + 1] - v[i]);
    CHECK(root == Approx(1.0 / std::sqrt(2.0)).margin(1e-4));
}

TEST_CASE("inversion matches the closed form for n <= 8", "[oscillator][property]") {
    const auto z = arange(0.0, 6.0, 0.05);
    for (int n = 0; n <= 8; ++n) {
        const CandidateExponent c{double(n), n % 2 == 0 ? TransformKind::cosine : TransformKind::sine};
        const auto inv = invert_candidate(c, z);
        INFO("n = " << n);
        CHECK(inv.mismatch <= 1e-6);
        CHECK(inv.scale == Approx(inversion_constant(n, c.kind)).epsilon(1e-8));
    }
}

TEST_CASE("inversion preconditions", "[oscillator]") {
    const std::vector<double> z = {0.0, 1.0};
    CHECK_THROWS_AS(invert_candidate({-0.5}, z), DomainError);
    CHECK_THROWS_AS(invert_candidate({-0.7}, z), DomainError);
    // rejected exponents are inverted without a closed form
    const auto r = invert_candidate({0.5}, z);
    CHECK_FALSE(r.closed_form);
    CHECK_NOTHROW(invert_candidate({-0.45}, z));
}

TEST_CASE("growth diagnostic", "[oscillator]") {
    CHECK(growth_diagnostic({0.5}).growing);
    CHECK(growth_diagnostic({0.3}).growing);
    CHECK(growth_diagnostic({1.5}).growing);
    CHECK(growth_diagnostic({2.5, TransformKind::sine}).growing);
    CHECK_FALSE(growth_diagnostic({2.0}).growing);
    CHECK_FALSE(growth_diagnostic({1.0, TransformKind::sine}).growing);
    for (int n = 0; n <= 8; ++n)
        CHECK_FALSE(growth_diagnostic({double(n), n % 2 == 0 ? TransformKind::cosine : TransformKind::sine}).growing);
    const std::vector<double> one = {2.0};
    CHECK_THROWS_AS(growth_diagnostic({0.5}, one), DomainError);
}

TEST_CASE("kummer ODE residual", "[oscillator]") {
    const auto z = arange(0.0, 5.0, 1e-3);
    const GridFunction g(z, sample([](double t) { return std::exp(-t * t); }, z));
    const GridFunction xg(z, sample([](double t) { return t * std::exp(-t * t); }, z));
    CHECK(kummer_ode_residual(g, 0.5) <= 1e-4);
    CHECK(kummer_ode_residual(xg, 1.5) <= 1e-4);
    CHECK(kummer_ode_residual(g, 2.0) >= 0.5);
    const auto coarse = arange(0.0, 5.0, 0.1);
    CHECK_THROWS_AS(kummer_ode_residual(GridFunction(coarse, sample([](double t) { return std::exp(-t * t); }, coarse)), 0.5),
                    GridTooCoarse);
}

TEST_CASE("parity extension", "[oscillator]") {
    const auto psi0 = parity_extend(half_line(0), 0);
    CHECK(psi0.parity() == Parity::even);
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) CHECK(psi0(x) == Approx(std::exp(-0.5 * x * x)).margin(1e-9));

    const auto psi1 = parity_extend(half_line(1), 1);
    CHECK(psi1.parity() == Parity::odd);
    CHECK(psi1(0.0) == 0.0);
    CHECK(psi1(-1.0) == Approx(-psi1(1.0)));

    CHECK_THROWS_AS(parity_extend(half_line(0), 0, Extension::antisymmetric), ParityMismatch);
    CHECK_THROWS_AS(parity_extend(half_line(1), 1, Extension::symmetric), ParityMismatch);
    // tag disagrees with n
    CHECK_THROWS_AS(parity_extend(half_line(0), 1), ParityMismatch);
}

TEST_CASE("nondegeneracy: exactly one extension per level", "[oscillator][property]") {
    for (int n = 0; n <= 8; ++n) {
        const auto half = half_line(n);
        const auto ok = n % 2 == 0 ? Extension::symmetric : Extension::antisymmetric;
        const auto bad = n % 2 == 0 ? Extension::antisymmetric : Extension::symmetric;
        Continuity c;
        INFO("n = " << n);
        CHECK_NOTHROW(parity_extend(half, n, ok, &c));
        CHECK(c.value_jump <= kContinuityTol);
        CHECK(c.slope_jump <= kContinuityTol);
        CHECK_THROWS_AS(parity_extend(half, n, bad), ParityMismatch);
    }
}

TEST_CASE("eigenpair examples", "[oscillator]") {
    const auto x = symmetric_grid(10.0, 5e-3);
    const auto p0 = eigenpair(0, x);
    CHECK(p0.epsilon == 0.5);
    CHECK(p0.psi(0.0) == Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-9));
    const auto p1 = eigenpair(1, x);
    CHECK(p1.epsilon == 1.5);
    CHECK(p1.psi(0.0) == 0.0);
    CHECK(eigenpair(3, x).epsilon == 3.5);
    CHECK(p1.psi(5.0) > 0.0);
    CHECK(eigenpair(4, x).psi(4.0) > 0.0);

    CHECK_THROWS_AS(eigenpair(0, symmetric_grid(3.0, 0.01)), GridTooSmall);
    CHECK_THROWS_AS(eigenpair(0, arange(-5.0, 10.0, 0.01)), DomainError);
    CHECK_THROWS_AS(eigenpair(-1, x), DomainError);
}

TEST_CASE("transform route reproduces the hermite functions", "[oscillator]") {
    const auto x = symmetric_grid(10.0, 5e-3);
    for (int n = 0; n <= 6; ++n) {
        const auto a = solve_by_transform(n, x);
        const auto b = eigenpair(n, x);
        double worst = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(a.psi.values()[i] - b.psi.values()[i]));
        INFO("n = " << n);
        CHECK(worst <= 1e-9);
        CHECK(a.epsilon == n + 0.5);
    }
}

TEST_CASE("schrodinger residual", "[oscillator]") {
    const auto x = symmetric_grid(10.0, 5e-3);
    CHECK(schrodinger_residual(eigenpair(0, x)) <= 1e-3);
    CHECK(schrodinger_residual(eigenpair(5, x)) <= 1e-2);
    auto shifted = eigenpair(0, x);
    shifted.epsilon += 1.0;
    CHECK(schrodinger_residual(shifted) >= 0.5);
}

TEST_CASE("orthonormality for n <= 8", "[oscillator][property]") {
    const auto x = symmetric_grid(10.0, 5e-3);
    std::vector<Eigenpair> pairs;
    for (int n = 0; n <= 8; ++n) pairs.push_back(eigenpair(n, x));
    CHECK(orthonormality_defect(pairs) <= 1e-6);
}

TEST_CASE("spectrum", "[oscillator]") {
    CHECK(spectrum(0) == std::vector<double>{0.5});
    const auto s = spectrum(3);
    CHECK(s == std::vector<double>{0.5, 1.5, 2.5, 3.5});
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] - s[i - 1] == 1.0);
    CHECK_THROWS_AS(spectrum(-1), DomainError);
}

TEST_CASE("scan rows", "[oscillator]") {
    const auto rows = scan(0.4, 0.6, 0.1, TransformKind::cosine);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK_FALSE(r.admissibility.accepted);
        REQUIRE(r.growth);
        CHECK(*r.growth);
    }
    const auto low = scan_exponent(-0.7, TransformKind::cosine);
    CHECK_FALSE(low.growth);
    CHECK_FALSE(scan_exponent(2.0, TransformKind::cosine).growth);
}
