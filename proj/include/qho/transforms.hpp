#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qho/error.hpp"
#include "qho/grid.hpp"
#include "qho/quadrature.hpp"

namespace qho::transforms {

/// sqrt(2/pi), the normalisation of both unilateral transforms.
inline const double kNorm = std::sqrt(2.0 / std::numbers::pi);

enum class BoundaryCheck { enforce, skip };

/// Relative tolerance on f(0) (sine) or f'(0) (cosine).
inline constexpr double kBoundaryTol = 1e-6;

namespace detail {

template <class F>
inline constexpr bool is_grid_v = std::is_same_v<std::remove_cvref_t<F>, GridFunction>;

/// Apply op(x, f(x)) pointwise. Samples stay samples.
template <RealFunction F, class Op>
auto map_values(const F& f, Op op) {
    if constexpr (is_grid_v<F>) {
        std::vector<double> v(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) v[i] = op(f.grid()[i], f.values()[i]);
        return GridFunction(f.grid(), std::move(v));
    } else {
        return [f, op](double x) { return op(x, static_cast<double>(f(x))); };
    }
}

/// Extends a half-line function to x < 0 with the parity implied by `kind`.
template <RealFunction F>
auto parity_extended(const F& f, TransformKind kind) {
    return [&f, kind](double x) {
        if (x >= 0.0) return static_cast<double>(f(x));
        const double v = static_cast<double>(f(-x));
        return kind == TransformKind::sine ? -v : v;
    };
}

template <RealFunction F>
double sample_scale(const F& f, double radius) {
    if constexpr (is_grid_v<F>) {
        return f.max_abs();
    } else {
        double m = 0.0;
        for (double x : linspace(0.0, radius, 481)) m = std::max(m, std::abs(static_cast<double>(f(x))));
        return m;
    }
}

}  // namespace detail

/// Checks the origin condition the inverse transform needs: f(0) = 0 for
/// sine, f'(0) = 0 for cosine, relative to max|f|.
template <RealFunction F>
void check_boundary(const F& f, TransformKind kind, const QuadratureConfig& cfg) {
    const double scale = detail::sample_scale(f, cfg.truncation_radius);
    if (scale == 0.0) return;
    if (kind == TransformKind::sine) {
        const double f0 = static_cast<double>(f(0.0));
        if (std::abs(f0) > kBoundaryTol * scale)
            throw BoundaryViolation("sine transform needs f(0) = 0, got " + std::to_string(f0));
        return;
    }
    double slope = 0.0;
    double tol = kBoundaryTol;
    if constexpr (detail::is_grid_v<F>) {
        const auto& g = f.grid();
        if (g.size() < 5 || g.front() != 0.0) return;  // samples do not permit the check
        auto w = fd_weights(0.0, std::span<const double>(g.data(), 5), 1);
        for (std::size_t i = 0; i < 5; ++i) slope += w[1][i] * f.values()[i];
        // the stencil cannot resolve slopes below its own truncation error
        tol = std::max(tol, (g[1] - g[0]) * (g[1] - g[0]));
    } else {
        constexpr double h = 1e-4;
        slope = (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
    }
    if (std::abs(slope) > tol * scale)
        throw BoundaryViolation("cosine transform needs f'(0) = 0, got " + std::to_string(slope));
}

/// Unilateral transform at a single frequency, without boundary or tail checks.
template <RealFunction F>
double transform_at(const F& f, TransformKind kind, double k, double abs_tol, const QuadratureConfig& cfg) {
    return kNorm * fourier_integral(f, kind, k, abs_tol, cfg).value;
}

/// Fourier sine/cosine transform sqrt(2/pi) * int_0^inf f(x) {sin,cos}(kx) dx
/// on `k_grid`. Samples are interpolated by local cubics.
template <RealFunction F>
GridFunction forward_transform(const F& f, TransformKind kind, std::span<const double> k_grid,
                               const QuadratureConfig& cfg = {},
                               BoundaryCheck check = BoundaryCheck::enforce) {
    cfg.validate();
    for (double k : k_grid)
        if (k < 0.0) throw DomainError("transform frequencies must be nonnegative");
    if (check == BoundaryCheck::enforce) check_boundary(f, kind, cfg);
    const auto mass = half_line_mass(f, cfg);
    require_decay(mass, cfg);
    const double abs_tol = cfg.rel_tol * mass.core;

    std::vector<double> values(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        values[i] = transform_at(f, kind, k_grid[i], abs_tol, cfg);
    return GridFunction(std::vector<double>(k_grid.begin(), k_grid.end()), std::move(values),
                        parity_of(kind));
}

/// Inverse transform. The kernel is symmetric, so this is the forward
/// transform with the roles of zeta and k exchanged.
template <RealFunction F>
GridFunction inverse_transform(const F& big_f, TransformKind kind, std::span<const double> zeta_grid,
                               const QuadratureConfig& cfg = {},
                               BoundaryCheck check = BoundaryCheck::enforce) {
    return forward_transform(big_f, kind, zeta_grid, cfg, check);
}

/// int_0^inf zeta^order f(zeta) d zeta.
template <RealFunction F>
double weighted_moment(const F& f, int order, const QuadratureConfig& cfg = {}) {
    if (order < 0) throw DomainError("moment order must be nonnegative");
    auto weighted = detail::map_values(f, [order](double x, double v) {
        return v == 0.0 ? 0.0 : v * std::pow(x, order);
    });
    return integrate_half_line(weighted, cfg).value;
}

/// | int |f|^2 d zeta - int |F|^2 dk |.
template <RealFunction F, RealFunction G>
double parseval_gap(const F& f, const G& big_f, const QuadratureConfig& cfg = {}) {
    auto sq = [](double, double v) { return v * v; };
    const double lhs = integrate_half_line(detail::map_values(f, sq), cfg).value;
    const double rhs = integrate_half_line(detail::map_values(big_f, sq), cfg).value;
    return std::abs(lhs - rhs);
}

/// Derivative of sampled F at its first node (which must be 0) from a
/// one-sided stencil of 2*order + 2 nodes, i.e. accuracy order + 2.
inline double derivative_at_origin(const GridFunction& big_f, int order) {
    if (order < 0) throw DomainError("derivative order must be nonnegative");
    if (big_f.empty() || big_f.grid().front() != 0.0)
        throw DomainError("derivative at the origin needs a grid starting at 0");
    if (order == 0) return big_f.values().front();
    const auto points = static_cast<std::size_t>(2 * order + 2);
    if (big_f.size() < points)
        throw GridTooCoarse("order-" + std::to_string(order) + " derivative needs " +
                            std::to_string(points) + " nodes, grid has " + std::to_string(big_f.size()));
    const auto& g = big_f.grid();
    auto w = fd_weights(0.0, std::span<const double>(g.data(), points), order);
    double d = 0.0;
    for (std::size_t i = 0; i < points; ++i) d += w[static_cast<std::size_t>(order)][i] * big_f.values()[i];
    return d;
}

struct MomentDerivativeGap {
    /// |d^m F/dk^m (0) - (-1)^n sqrt(2/pi) M_m(f)|, m = 2n (cosine) or 2n+1 (sine).
    double identity = 0.0;
    /// |d^m F/dk^m (0)| for the order that must vanish (2n+1 cosine, 2n sine).
    double vanishing = 0.0;

    double worst() const { return std::max(identity, vanishing); }
};

/// Moment/derivative relation at the origin of a transform pair.
template <RealFunction F>
MomentDerivativeGap moment_derivative_gap(const F& f, const GridFunction& big_f, TransformKind kind, int n,
                                          const QuadratureConfig& cfg = {}) {
    if (n < 0) throw DomainError("n must be nonnegative");
    const int order = kind == TransformKind::cosine ? 2 * n : 2 * n + 1;
    const int zero_order = kind == TransformKind::cosine ? 2 * n + 1 : 2 * n;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    MomentDerivativeGap gap;
    gap.identity = std::abs(derivative_at_origin(big_f, order) - sign * kNorm * weighted_moment(f, order, cfg));
    gap.vanishing = std::abs(derivative_at_origin(big_f, zero_order));
    return gap;
}

namespace detail {

inline constexpr double kSecondDiffStep = 1e-3;
inline constexpr double kFirstDiffStep = 1e-4;

template <RealFunction F>
auto second_derivative(const F& f, TransformKind kind) {
    return [ext = parity_extended(f, kind)](double x) {
        constexpr double h = kSecondDiffStep;
        return (-ext(x + 2 * h) + 16.0 * ext(x + h) - 30.0 * ext(x) + 16.0 * ext(x - h) - ext(x - 2 * h)) /
               (12.0 * h * h);
    };
}

template <RealFunction F>
auto first_derivative(const F& f, TransformKind kind) {
    return [ext = parity_extended(f, kind)](double x) {
        constexpr double h = kFirstDiffStep;
        return (-ext(x + 2 * h) + 8.0 * ext(x + h) - 8.0 * ext(x - h) + ext(x - 2 * h)) / (12.0 * h);
    };
}

}  // namespace detail

/// max_k | F{f''}(k) + k^2 F{f}(k) | with an explicit second derivative.
template <RealFunction F, RealFunction F2>
double second_derivative_identity_gap(const F& f, const F2& f2, TransformKind kind,
                                      std::span<const double> k_grid, const QuadratureConfig& cfg = {}) {
    const auto big_f = forward_transform(f, kind, k_grid, cfg);
    const auto big_f2 = forward_transform(f2, kind, k_grid, cfg, BoundaryCheck::skip);
    double gap = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double k = k_grid[i];
        gap = std::max(gap, std::abs(big_f2.values()[i] + k * k * big_f.values()[i]));
    }
    return gap;
}

/// Same identity with f'' from a fourth-order central difference of the
/// parity-extended f.
template <RealFunction F>
double second_derivative_identity_gap(const F& f, TransformKind kind, std::span<const double> k_grid,
                                      const QuadratureConfig& cfg = {}) {
    return second_derivative_identity_gap(f, detail::second_derivative(f, kind), kind, k_grid, cfg);
}

/// max_k | F{zeta f'}(k) + F(k) + k dF/dk |.
template <RealFunction F>
double dilation_identity_gap(const F& f, TransformKind kind, std::span<const double> k_grid,
                             const QuadratureConfig& cfg = {}) {
    const auto df = detail::first_derivative(f, kind);
    auto zeta_df = [&df](double x) { return x * df(x); };
    auto zeta_f = [&f](double x) { return x * static_cast<double>(f(x)); };
    const TransformKind other = kind == TransformKind::sine ? TransformKind::cosine : TransformKind::sine;
    // d/dk of the cosine transform is -F_s{zeta f}; of the sine transform, +F_c{zeta f}
    const double sign = kind == TransformKind::cosine ? -1.0 : 1.0;

    const auto big_f = forward_transform(f, kind, k_grid, cfg);
    const auto lhs = forward_transform(zeta_df, kind, k_grid, cfg, BoundaryCheck::skip);
    const auto slope = forward_transform(zeta_f, other, k_grid, cfg, BoundaryCheck::skip);
    double gap = 0.0;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double k = k_grid[i];
        gap = std::max(gap, std::abs(lhs.values()[i] + big_f.values()[i] + k * sign * slope.values()[i]));
    }
    return gap;
}

/// Exponential transform (1/sqrt(2 pi)) int f(x) e^{i kappa x} dx of a real
/// function on the whole line, split into its even and odd halves.
template <RealFunction F>
std::complex<double> exponential_transform(const F& f, double kappa, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    auto even = [&f](double x) { return 0.5 * (static_cast<double>(f(x)) + static_cast<double>(f(-x))); };
    auto odd = [&f](double x) { return 0.5 * (static_cast<double>(f(x)) - static_cast<double>(f(-x))); };
    const auto even_mass = half_line_mass(even, cfg);
    const auto odd_mass = half_line_mass(odd, cfg);
    require_decay(even_mass, cfg);
    require_decay(odd_mass, cfg);
    const double tol = cfg.rel_tol * std::max(even_mass.core, odd_mass.core);
    // sqrt(2/pi) * int_0^inf = (1/sqrt(2 pi)) * 2 * int_0^inf
    const double re = transform_at(even, TransformKind::cosine, kappa, tol, cfg);
    const double im = transform_at(odd, TransformKind::sine, kappa, tol, cfg);
    return {re, im};
}

/// | F{f(c x)}(kappa) - F{f}(kappa / c) / |c| | for the exponential transform.
template <RealFunction F>
double scaling_property_gap(const F& f, double c, double kappa, const QuadratureConfig& cfg = {}) {
    if (c == 0.0 || !std::isfinite(c)) throw DomainError("scaling factor must be finite and nonzero");
    auto scaled = [&f, c](double x) { return static_cast<double>(f(c * x)); };
    const auto lhs = exponential_transform(scaled, kappa, cfg);
    const auto rhs = exponential_transform(f, kappa / c, cfg) / std::abs(c);
    return std::abs(lhs - rhs);
}

}  // namespace qho::transforms
