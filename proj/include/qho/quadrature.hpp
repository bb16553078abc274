#pragma once

// Adaptive Gauss-Kronrod integration on the half-line [0, inf).
//
// Finite parts are integrated by globally adaptive G7/K15 panels. A power-law
// behaviour x^p at the origin with non-integer p is regularised by the
// substitution x = s u^m on the first panel. Non-oscillatory tails beyond the
// truncation radius R are integrated after mapping x = R/t onto (0, 1].

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "qho/error.hpp"
#include "qho/grid.hpp"

namespace qho {

struct QuadratureConfig {
    double truncation_radius = 12.0;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(truncation_radius > 0.0)) throw DomainError("truncation_radius must be positive");
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
        if (max_subdivisions <= 0) throw DomainError("max_subdivisions must be positive");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    /// Integral of |f|, used as the scale for absolute tolerances.
    double abs_value = 0.0;
    bool converged = true;

    QuadratureResult& operator+=(const QuadratureResult& o) {
        value += o.value;
        error += o.error;
        abs_value += o.abs_value;
        converged = converged && o.converged;
        return *this;
    }
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7.
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    bool operator<(const Panel& o) const { return error < o.error; }
};

/// One G7/K15 panel with the QUADPACK error heuristic.
template <class F>
Panel gk15(const F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv1[7];
    double fv2[7];
    const double fc = static_cast<double>(f(centre));
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) {
        const int jt = 2 * j + 1;
        const double dx = half * kXgk[jt];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[jt] = f1;
        fv2[jt] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jt] * (f1 + f2);
        resabs += kWgk[jt] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jt = 2 * j;
        const double dx = half * kXgk[jt];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[jt] = f1;
        fv2[jt] = f2;
        resk += kWgk[jt] * (f1 + f2);
        resabs += kWgk[jt] * (std::abs(f1) + std::abs(f2));
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, result, err, resabs};
}

}  // namespace detail

/// Globally adaptive integration over the partition `breaks`.
/// At most `max_subdivisions` bisections are added to the initial partition.
template <class F>
QuadratureResult adaptive_integrate(const F& f, const std::vector<double>& breaks, double abs_tol,
                                    double rel_tol, int max_subdivisions) {
    QuadratureResult out;
    if (breaks.size() < 2) return out;

    std::priority_queue<detail::Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    double total_abs = 0.0;
    double frozen_err = 0.0;
    double frozen_value = 0.0;
    double frozen_abs = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        if (!(breaks[i] > breaks[i - 1])) continue;
        auto p = detail::gk15(f, breaks[i - 1], breaks[i]);
        total += p.value;
        total_err += p.error;
        total_abs += p.abs_value;
        heap.push(p);
    }
    if (!std::isfinite(total) || !std::isfinite(total_err)) {
        out.value = total;
        out.error = total_err;
        out.converged = false;
        return out;
    }

    int bisections = 0;
    auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (total_err > tolerance() && !heap.empty()) {
        if (bisections >= max_subdivisions) {
            out.converged = false;
            break;
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 1e3 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
            // panel cannot be split further; its error is roundoff-limited
            frozen_value += worst.value;
            frozen_err += worst.error;
            frozen_abs += worst.abs_value;
            if (frozen_err > tolerance()) {
                out.converged = false;
                break;
            }
            continue;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++bisections;
        if (!std::isfinite(total)) {
            out.converged = false;
            break;
        }
    }
    // re-sum to shed accumulated cancellation in the running totals
    double sum = frozen_value;
    double err = frozen_err;
    double abs_sum = frozen_abs;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        abs_sum += heap.top().abs_value;
        heap.pop();
    }
    out.value = sum;
    out.error = err;
    out.abs_value = abs_sum;
    if (!std::isfinite(out.value)) out.converged = false;
    return out;
}

/// Exponent p of a power law |f(x)| ~ x^p at the origin, estimated from two
/// probes. Returns 0 when f vanishes identically near the origin.
template <class F>
double origin_exponent(const F& f) {
    constexpr double x1 = 1e-10;
    constexpr double x2 = 1e-8;
    const double f1 = std::abs(static_cast<double>(f(x1)));
    const double f2 = std::abs(static_cast<double>(f(x2)));
    if (!std::isfinite(f1)) return -std::numeric_limits<double>::infinity();
    if (f1 == 0.0 || f2 == 0.0 || !std::isfinite(f2)) return 0.0;
    return std::log(f1 / f2) / std::log(x1 / x2);
}

/// Exponents within this distance of a nonnegative integer count as regular.
inline constexpr double kRegularExponentTol = 1e-4;

inline bool regular_exponent(double p) {
    return p > -kRegularExponentTol && std::abs(p - std::round(p)) < kRegularExponentTol;
}

/// Adaptive integration over `breaks` (breaks[0] == 0) that absorbs a
/// non-integer power law at the origin into a substitution on the first panel.
template <class F>
QuadratureResult integrate_from_origin(const F& f, const std::vector<double>& breaks, double abs_tol,
                                       double rel_tol, int max_subdivisions) {
    if (breaks.size() < 2) return {};
    const double p = origin_exponent(f);
    if (p <= -1.0 + 1e-3)
        throw SingularityTooStrong("integrand behaves like x^" + std::to_string(p) + " at the origin");
    if (regular_exponent(p) || breaks.front() != 0.0)
        return adaptive_integrate(f, breaks, abs_tol, rel_tol, max_subdivisions);

    // x = s u^m makes the head integrand behave like u^(m(p+1)-1), m(p+1) >= 4
    const double s = breaks[1];
    const double m = std::ceil(4.0 / (p + 1.0));
    auto head_integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double x = s * std::pow(u, m);
        const double v = static_cast<double>(f(x));
        return v == 0.0 ? 0.0 : v * s * m * std::pow(u, m - 1.0);
    };
    auto head = adaptive_integrate(head_integrand, {0.0, 0.5, 1.0}, 0.5 * abs_tol, rel_tol, max_subdivisions);
    std::vector<double> rest(breaks.begin() + 1, breaks.end());
    head += adaptive_integrate(f, rest, 0.5 * abs_tol, rel_tol, max_subdivisions);
    return head;
}

/// Integral of |f| over [R, inf) via x = R/t. Throws TailNotDecayed when the
/// mapped integral is not finite or fails to converge.
template <class F>
double tail_integral(const F& f, double radius, double abs_tol, double rel_tol, int max_subdivisions,
                     bool absolute) {
    auto mapped = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double x = radius / t;
        const double v = static_cast<double>(f(x));
        if (v == 0.0) return 0.0;
        return (absolute ? std::abs(v) : v) * radius / (t * t);
    };
    auto r = adaptive_integrate(mapped, {0.0, 0.25, 0.5, 1.0}, abs_tol, rel_tol, max_subdivisions);
    if (!std::isfinite(r.value) || !r.converged)
        throw TailNotDecayed("integrand does not decay beyond x = " + std::to_string(radius));
    return r.value;
}

/// Uniform partition of [0, R] into panels no wider than `width`.
inline std::vector<double> uniform_breaks(double radius, double width) {
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(radius / width)));
    return linspace(0.0, radius, panels + 1);
}

/// Refine a partition so that no panel exceeds `width`.
inline std::vector<double> cap_panels(const std::vector<double>& breaks, double width) {
    if (breaks.size() < 2) return breaks;
    std::vector<double> out{breaks.front()};
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        const double a = breaks[i - 1];
        const double b = breaks[i];
        const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / width)));
        for (std::size_t j = 1; j <= pieces; ++j)
            out.push_back(j == pieces ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(pieces));
    }
    return out;
}

/// Panel width for fixed-order rules against cos/sin(k x): a quarter period.
inline double oscillation_cap(double k) {
    return k > 0.0 ? std::numbers::pi / (4.0 * k) : std::numeric_limits<double>::infinity();
}

namespace detail {

template <class F>
std::vector<double> base_breaks(const F&, double radius) {
    return uniform_breaks(radius, 1.0);
}

inline std::vector<double> base_breaks(const GridFunction& f, double radius) {
    std::vector<double> out;
    if (f.empty() || f.grid().front() > 0.0) out.push_back(0.0);
    for (double x : f.grid()) {
        if (x < 0.0) continue;
        if (x >= radius) break;
        out.push_back(x);
    }
    if (out.empty() || out.back() < radius) out.push_back(radius);
    return out;
}

template <class F>
double effective_radius(const F&, const QuadratureConfig& cfg) {
    return cfg.truncation_radius;
}

inline double effective_radius(const GridFunction& f, const QuadratureConfig& cfg) {
    return f.empty() ? 0.0 : std::min(cfg.truncation_radius, f.grid().back());
}

}  // namespace detail

/// Integral of |f| over [0, R] and the magnitude of the tail past R.
struct HalfLineMass {
    double core = 0.0;
    double tail = 0.0;
};

/// Tail magnitude of f past the truncation radius. For callables the tail is
/// integrated; for samples it is estimated from the last panel as
/// |f(x_last)| * (x_last - x_prev), compared against the sample scale.
template <RealFunction F>
HalfLineMass half_line_mass(const F& f, const QuadratureConfig& cfg) {
    const double radius = detail::effective_radius(f, cfg);
    auto absf = [&](double x) { return std::abs(static_cast<double>(f(x))); };
    HalfLineMass m;
    auto core = integrate_from_origin(absf, detail::base_breaks(f, radius), 0.0, 1e-6, cfg.max_subdivisions);
    m.core = core.value;
    if constexpr (std::is_same_v<std::remove_cvref_t<F>, GridFunction>) {
        const auto& g = f.grid();
        if (g.size() >= 2) m.tail = std::abs(f(radius)) * (g.back() - g[g.size() - 2]);
    } else {
        m.tail = tail_integral(f, radius, 1e-3 * cfg.rel_tol * std::max(m.core, 1e-300), 1e-6,
                               cfg.max_subdivisions, true);
    }
    return m;
}

/// Throws TailNotDecayed when the truncated tail exceeds rel_tol of the mass.
inline void require_decay(const HalfLineMass& m, const QuadratureConfig& cfg) {
    if (m.tail > cfg.rel_tol * m.core && m.tail > std::numeric_limits<double>::min())
        throw TailNotDecayed("tail mass " + std::to_string(m.tail) + " exceeds rel_tol of total " +
                             std::to_string(m.core));
}

/// Non-oscillatory integral of f over [0, inf): [0, R] plus the mapped tail
/// for callables; samples are integrated over their grid only.
template <RealFunction F>
QuadratureResult integrate_half_line(const F& f, const QuadratureConfig& cfg) {
    cfg.validate();
    const double radius = detail::effective_radius(f, cfg);
    auto fd = [&](double x) { return static_cast<double>(f(x)); };
    auto core = integrate_from_origin(fd, detail::base_breaks(f, radius), 0.0, cfg.rel_tol,
                                      cfg.max_subdivisions);
    if (!core.converged) throw NoConvergence("half-line quadrature exceeded the subdivision limit");
    if constexpr (std::is_same_v<std::remove_cvref_t<F>, GridFunction>) {
        require_decay(half_line_mass(f, cfg), cfg);
    } else {
        const double abs_tol = cfg.rel_tol * std::max(core.abs_value, 1e-300);
        core.value += tail_integral(fd, radius, abs_tol, cfg.rel_tol, cfg.max_subdivisions, false);
    }
    return core;
}

/// Integral over [0, R] of f(x) * sin(kx) or cos(kx), panels capped at a
/// quarter period. `abs_tol` is typically rel_tol times the mass of f.
template <RealFunction F>
QuadratureResult fourier_integral(const F& f, TransformKind kind, double k, double abs_tol,
                                  const QuadratureConfig& cfg) {
    const double radius = detail::effective_radius(f, cfg);
    if (kind == TransformKind::sine && k == 0.0) return {};
    auto breaks = cap_panels(detail::base_breaks(f, radius), oscillation_cap(std::abs(k)));
    auto integrand = [&](double x) {
        const double v = static_cast<double>(f(x));
        return kind == TransformKind::sine ? v * std::sin(k * x) : v * std::cos(k * x);
    };
    auto r = integrate_from_origin(integrand, breaks, abs_tol, cfg.rel_tol, cfg.max_subdivisions);
    if (!r.converged) throw NoConvergence("oscillatory quadrature exceeded the subdivision limit");
    return r;
}

}  // namespace qho
