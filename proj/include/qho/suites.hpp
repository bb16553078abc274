#pragma once

// Invariant suites behind `qho verify`. Each check is named
// <module>.<invariant> and records the worst measured value over its cases.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qho/functions.hpp"
#include "qho/oracle.hpp"
#include "qho/oscillator.hpp"
#include "qho/report.hpp"
#include "qho/transforms.hpp"

namespace qho::suites {

inline constexpr std::array<std::string_view, 4> kSuiteNames = {"transforms", "oscillator", "oracle", "all"};

inline bool is_suite(std::string_view s) {
    return std::find(kSuiteNames.begin(), kSuiteNames.end(), s) != kSuiteNames.end();
}

namespace detail {

struct FamilyMember {
    const char* name;
    TransformKind kind;
};

inline constexpr std::array<FamilyMember, 3> kGaussFamily = {
    {{"gauss", TransformKind::cosine}, {"x_gauss", TransformKind::sine}, {"x3_gauss", TransformKind::sine}}};

/// Runs `body` and turns a library error into a failed check.
template <class Body>
void guarded(RunReport& r, const std::string& name, double tolerance, Body body) {
    try {
        r.add_check(name, body(), tolerance);
    } catch (const Error& e) {
        r.add_check(name, false, std::numeric_limits<double>::max(), tolerance);
        r.error = r.error ? *r.error + "; " + name + ": " + e.what() : name + ": " + e.what();
    }
}

}  // namespace detail

inline void run_transforms(RunReport& r, const QuadratureConfig& cfg = {}) {
    using namespace transforms;
    using detail::guarded;
    const auto k_fine = arange(0.0, 12.0, 0.01);
    const auto zeta = arange(0.0, 6.0, 0.1);
    const auto k_md = arange(0.0, 8.0, 0.05);
    const auto k_coarse = arange(0.0, 8.0, 0.5);

    guarded(r, "transforms.roundtrip", 1e-6, [&] {
        double worst = 0.0;
        for (const auto& m : detail::kGaussFamily) {
            const auto tf = test_function(m.name);
            const auto big_f = forward_transform(tf.f, m.kind, k_fine, cfg);
            const auto back = inverse_transform(big_f, m.kind, zeta, cfg);
            for (std::size_t i = 0; i < zeta.size(); ++i)
                worst = std::max(worst, std::abs(back.values()[i] - tf.f(zeta[i])));
        }
        return worst;
    });

    guarded(r, "transforms.parseval", 1e-6, [&] {
        double worst = 0.0;
        for (const auto& m : detail::kGaussFamily) {
            const auto tf = test_function(m.name);
            worst = std::max(worst, parseval_gap(tf.f, forward_transform(tf.f, m.kind, k_fine, cfg), cfg));
        }
        const auto e = test_function("exp");
        worst = std::max(worst, parseval_gap(e.f, e.sine, cfg));
        return worst;
    });

    guarded(r, "transforms.boundary_duality", 1e-6, [&] {
        double worst = 0.0;
        for (const auto& m : detail::kGaussFamily) {
            const auto big_f = forward_transform(test_function(m.name).f, m.kind, k_fine, cfg);
            const double v = m.kind == TransformKind::sine ? big_f.values().front() : derivative_at_origin(big_f, 1);
            worst = std::max(worst, std::abs(v));
        }
        return worst;
    });

    guarded(r, "transforms.linearity", 1e-9, [&] {
        std::mt19937 rng(20240611u);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        auto f = [](double z) { return std::exp(-z * z); };
        auto g = [](double z) { return (1.0 + z * z) * std::exp(-2.0 * z * z); };
        const auto ff = forward_transform(f, TransformKind::cosine, k_coarse, cfg);
        const auto fg = forward_transform(g, TransformKind::cosine, k_coarse, cfg);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const double a = coef(rng);
            const double b = coef(rng);
            auto h = [&](double z) { return a * f(z) + b * g(z); };
            const auto fh = forward_transform(h, TransformKind::cosine, k_coarse, cfg);
            for (std::size_t i = 0; i < k_coarse.size(); ++i)
                worst = std::max(worst, std::abs(fh.values()[i] - a * ff.values()[i] - b * fg.values()[i]));
        }
        return worst;
    });

    guarded(r, "transforms.moment_derivative", 1e-4, [&] {
        double worst = 0.0;
        for (const auto& m : detail::kGaussFamily) {
            const auto tf = test_function(m.name);
            const auto big_f = forward_transform(tf.f, m.kind, k_md, cfg);
            for (int n = 0; n <= 1; ++n) worst = std::max(worst, moment_derivative_gap(tf.f, big_f, m.kind, n, cfg).worst());
        }
        return worst;
    });

    guarded(r, "transforms.derivative_property", 1e-6, [&] {
        auto f = [](double z) { return std::exp(-z * z); };
        auto f2 = [](double z) { return (4.0 * z * z - 2.0) * std::exp(-z * z); };
        auto g = [](double z) { return z * std::exp(-z * z); };
        auto g2 = [](double z) { return (4.0 * z * z * z - 6.0 * z) * std::exp(-z * z); };
        return std::max(second_derivative_identity_gap(f, f2, TransformKind::cosine, k_coarse, cfg),
                        second_derivative_identity_gap(g, g2, TransformKind::sine, k_coarse, cfg));
    });

    guarded(r, "transforms.scaling_property", 1e-6, [&] {
        auto f = [](double x) { return std::exp(-x * x); };
        auto g = [](double x) { return (1.0 + x) * std::exp(-x * x); };
        double worst = 0.0;
        for (double c : {2.0, 1.0, -1.0, 0.5, -3.0})
            for (double kappa : {0.0, 1.0, 2.5}) {
                worst = std::max(worst, scaling_property_gap(f, c, kappa, cfg));
                worst = std::max(worst, scaling_property_gap(g, c, kappa, cfg));
            }
        return worst;
    });
}

inline void run_oscillator(RunReport& r, const QuadratureConfig& cfg = {}) {
    using namespace oscillator;
    using detail::guarded;
    constexpr int n_max = 8;

    guarded(r, "oscillator.exact_ode_residual", 1e-12, [&] {
        std::mt19937 rng(7u);
        std::uniform_real_distribution<double> dist(-0.4, 10.0);
        const auto k = arange(kMinK, 8.0, 0.01);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const CandidateExponent c{dist(rng)};
            worst = std::max(worst, transformed_ode_residual(c, c.epsilon(), k));
        }
        return worst;
    });

    guarded(r, "oscillator.quantization", 0.0, [&] {
        double wrong = 0.0;
        for (auto kind : {TransformKind::cosine, TransformKind::sine}) {
            for (double a : scan_points(-0.45, 6.05, 0.05)) {
                const bool accepted = classify_exponent({a, kind}).accepted;
                const auto n = as_integer(a);
                const bool expected = n && *n >= 0 && *n <= 6 && ((*n % 2 == 0) == (kind == TransformKind::cosine));
                if (accepted != expected) wrong += 1.0;
            }
        }
        return wrong;
    });

    const auto x = symmetric_grid(10.0, 5e-3);
    std::vector<Eigenpair> pairs;
    for (int n = 0; n <= n_max; ++n) pairs.push_back(eigenpair(n, x));

    guarded(r, "oscillator.orthonormality", 1e-6, [&] { return orthonormality_defect(pairs); });

    guarded(r, "oscillator.schrodinger_residual", 1e-2, [&] {
        double worst = 0.0;
        for (const auto& p : pairs) worst = std::max(worst, schrodinger_residual(p));
        return worst;
    });

    guarded(r, "oscillator.nondegeneracy", 0.0, [&] {
        const auto zeta = arange(0.0, 6.0, 0.01);
        double wrong = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            const auto kind = n % 2 == 0 ? TransformKind::cosine : TransformKind::sine;
            std::vector<double> phi(zeta.size());
            for (std::size_t i = 0; i < zeta.size(); ++i) phi[i] = inversion_closed_form(n, kind, zeta[i]);
            const GridFunction half(zeta, phi, parity_of(kind));
            const auto allowed = n % 2 == 0 ? Extension::symmetric : Extension::antisymmetric;
            const auto forbidden = n % 2 == 0 ? Extension::antisymmetric : Extension::symmetric;
            try {
                parity_extend(half, n, allowed);
            } catch (const ParityMismatch&) {
                wrong += 1.0;
            }
            try {
                parity_extend(half, n, forbidden);
                wrong += 1.0;
            } catch (const ParityMismatch&) {
            }
        }
        return wrong;
    });

    guarded(r, "oscillator.inversion_closed_form", 1e-6, [&] {
        const auto zeta = arange(0.0, 6.0, 0.05);
        double worst = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            const CandidateExponent c{static_cast<double>(n), n % 2 == 0 ? TransformKind::cosine : TransformKind::sine};
            worst = std::max(worst, invert_candidate(c, zeta, cfg).mismatch);
        }
        return worst;
    });

    guarded(r, "oscillator.transform_pair_consistency", 1e-5, [&] {
        const auto zeta = arange(0.0, 7.0, 0.01);
        const auto k = arange(0.2, 6.0, 0.2);
        double worst = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            const CandidateExponent c{static_cast<double>(n), n % 2 == 0 ? TransformKind::cosine : TransformKind::sine};
            const auto inv = invert_candidate(c, zeta, cfg);
            const auto big_f = transforms::forward_transform(inv.numeric, c.kind, k, cfg);
            // one overall constant, fixed at the middle of the window
            const std::size_t ref = k.size() / 2;
            const double scale = big_f.values()[ref] / phi_transform(c, k[ref]);
            double peak = 0.0;
            double diff = 0.0;
            for (std::size_t i = 0; i < k.size(); ++i) {
                const double target = scale * phi_transform(c, k[i]);
                peak = std::max(peak, std::abs(target));
                diff = std::max(diff, std::abs(big_f.values()[i] - target));
            }
            worst = std::max(worst, diff / peak);
        }
        return worst;
    });

    guarded(r, "oscillator.branch_invariance", 1e-14, [&] {
        const auto k = arange(0.05, 8.0, 0.05);
        double worst = 0.0;
        for (double a : {0.3, 1.7, 2.0, 4.25}) {
            const CandidateExponent base{a};
            auto norm_sq = [&](int m) {
                const CandidateExponent c{a, TransformKind::cosine, m};
                return integrate_half_line([&c](double q) { return q > 0.0 ? std::norm(phi_transform_on_branch(c, q)) : 0.0; },
                                           cfg)
                    .value;
            };
            const double p0 = norm_sq(0);
            for (int m = -2; m <= 2; ++m) {
                const CandidateExponent c{a, TransformKind::cosine, m};
                for (double q : k) {
                    const double ref = phi_transform(base, q);
                    worst = std::max(worst, std::abs(std::abs(phi_transform_on_branch(c, q)) - ref) / ref);
                }
                worst = std::max(worst, std::abs(norm_sq(m) - p0) / p0);
            }
        }
        return worst;
    });

    guarded(r, "oscillator.growth_diagnostic", 0.0, [&] {
        double wrong = 0.0;
        const std::array<CandidateExponent, 4> rejected = {
            {{0.3}, {0.5}, {1.5}, {2.5, TransformKind::sine}}};
        for (const auto& c : rejected)
            if (!growth_diagnostic(c, kDefaultGrowthProbe, cfg).growing) wrong += 1.0;
        for (int n = 0; n <= n_max; ++n) {
            const CandidateExponent c{static_cast<double>(n), n % 2 == 0 ? TransformKind::cosine : TransformKind::sine};
            if (growth_diagnostic(c, kDefaultGrowthProbe, cfg).growing) wrong += 1.0;
        }
        return wrong;
    });
}

inline void run_oracle(RunReport& r, const QuadratureConfig& cfg = {}) {
    using detail::guarded;

    oracle::FdConfig fd;
    fd.n_states = 9;
    std::vector<oscillator::Eigenpair> states;
    guarded(r, "oracle.eigenvalue_agreement", 1e-3, [&] {
        states = oracle::fd_eigensolve(fd);
        double worst = 0.0;
        for (const auto& p : states) worst = std::max(worst, std::abs(p.epsilon - (p.n + 0.5)));
        return worst;
    });

    guarded(r, "oracle.convergence_order", 0.5, [&] {
        auto ground_error = [](int points) {
            oracle::FdConfig c;
            c.points = points;
            c.n_states = 1;
            return std::abs(oracle::fd_eigensolve(c).front().epsilon - 0.5);
        };
        const double ratio = ground_error(500) / ground_error(1000);
        // h = 2L/(N+1), so doubling N shrinks h by 1001/501
        const double expected = std::pow(1001.0 / 501.0, 2);
        return std::abs(ratio - expected);
    });

    guarded(r, "oracle.eigenvector_agreement", 1e-3, [&] {
        if (states.empty()) states = oracle::fd_eigensolve(fd);
        double worst = 0.0;
        for (int n = 0; n <= 6; ++n) {
            const auto& fd_psi = states[static_cast<std::size_t>(n)].psi;
            const auto exact = oscillator::eigenpair(n, fd_psi.grid());
            for (std::size_t i = 0; i < fd_psi.size(); ++i)
                worst = std::max(worst, std::abs(fd_psi.values()[i] - exact.psi.values()[i]));
        }
        return worst;
    });

    guarded(r, "oracle.reference_quadrature", 1e-9, [&] {
        const double a = oracle::reference_quadrature([](double k) { return std::exp(-0.25 * k * k); }, cfg);
        const double b = oracle::reference_quadrature([](double x) { return std::exp(-x) / std::sqrt(x); }, cfg);
        const double sqrt_pi = std::sqrt(std::numbers::pi);
        return std::max(std::abs(a - sqrt_pi), std::abs(b - sqrt_pi)) / sqrt_pi;
    });

    guarded(r, "oracle.determinism", 0.0, [&] {
        auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x * x) + x * std::exp(-x); };
        const double first = oracle::reference_quadrature(f, cfg);
        const double second = oracle::reference_quadrature(f, cfg);
        oracle::FdConfig small;
        small.points = 600;
        small.n_states = 3;
        const auto s1 = oracle::fd_eigensolve(small);
        const auto s2 = oracle::fd_eigensolve(small);
        double differ = first == second ? 0.0 : 1.0;
        for (std::size_t i = 0; i < s1.size(); ++i)
            if (s1[i].epsilon != s2[i].epsilon || s1[i].psi.values() != s2[i].psi.values()) differ += 1.0;
        return differ;
    });
}

/// Runs the named suite ("all" runs every suite) into a report.
inline RunReport run_suite(std::string_view suite, const QuadratureConfig& cfg = {}) {
    if (!is_suite(suite)) throw DomainError("unknown suite '" + std::string(suite) + "'");
    RunReport r;
    r.command = "verify";
    r.parameters["suite"] = std::string(suite);
    r.parameters["rel_tol"] = cfg.rel_tol;
    r.parameters["truncation_radius"] = cfg.truncation_radius;
    const bool all = suite == "all";
    if (all || suite == "transforms") run_transforms(r, cfg);
    if (all || suite == "oscillator") run_oscillator(r, cfg);
    if (all || suite == "oracle") run_oracle(r, cfg);
    return r;
}

}  // namespace qho::suites
