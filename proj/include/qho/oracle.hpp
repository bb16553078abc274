#pragma once

// Independent cross-checks that share no code path with the transform method:
// a finite-difference eigensolver for -1/2 psi'' + 1/2 x^2 psi = eps psi, and
// an exp-sinh (double exponential) quadrature on [0, inf).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qho/error.hpp"
#include "qho/grid.hpp"
#include "qho/oscillator.hpp"
#include "qho/quadrature.hpp"

namespace qho::oracle {

struct FdConfig {
    double half_width = 12.0;
    int points = 4000;
    int n_states = 4;

    void validate() const {
        if (points < 100) throw DomainError("FD grid needs at least 100 points");
        if (!(half_width >= 6.0)) throw DomainError("FD half width must be at least 6");
        if (n_states < 1 || n_states > points / 10)
            throw DomainError("n_states must lie in [1, points/10]");
    }
};

/// Symmetric tridiagonal matrix: diagonal and off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

/// Number of eigenvalues strictly below `lambda` (Sturm sequence count).
inline int sturm_count(const Tridiagonal& t, double lambda, double pivmin) {
    int count = 0;
    double q = t.diag[0] - lambda;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < t.diag.size(); ++i) {
        q = t.diag[i] - lambda - t.off[i - 1] * t.off[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

/// index-th smallest eigenvalue (0-based) by bisection.
inline double bisect_eigenvalue(const Tridiagonal& t, int index, int max_iterations) {
    const std::size_t n = t.diag.size();
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
        norm = std::max(norm, std::abs(t.diag[i]) + r);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, norm * norm);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) || mid == lo || mid == hi) return mid;
        if (sturm_count(t, mid, pivmin) > index)
            hi = mid;
        else
            lo = mid;
    }
    throw ConvergenceFailure("bisection did not isolate eigenvalue " + std::to_string(index));
}

/// Solves (T - shift I) y = b in place by Gaussian elimination with partial
/// pivoting on the tridiagonal band.
inline void shifted_solve(const Tridiagonal& t, double shift, std::vector<double>& b) {
    const std::size_t n = t.diag.size();
    std::vector<double> dl(t.off), d(n), du(t.off), du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<bool> swapped(n, false);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
    double norm = 0.0;
    for (double v : t.diag) norm = std::max(norm, std::abs(v));
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(norm, 1.0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = true;
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!swapped[i]) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
}

/// Eigenvector for a converged eigenvalue by inverse iteration.
inline std::vector<double> inverse_iteration(const Tridiagonal& t, double lambda, int max_iterations) {
    const std::size_t n = t.diag.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    const double shift = lambda + 1e-12 * std::max(1.0, std::abs(lambda));
    auto normalize = [](std::vector<double>& x) {
        double s = 0.0;
        for (double y : x) s += y * y;
        s = 1.0 / std::sqrt(s);
        for (double& y : x) y *= s;
    };
    normalize(v);
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<double> w = v;
        shifted_solve(t, shift, w);
        normalize(w);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += w[i] * v[i];
        if (dot < 0.0)
            for (double& y : w) y = -y;
        v = std::move(w);
        if (std::abs(std::abs(dot) - 1.0) < 1e-14) return v;
    }
    throw ConvergenceFailure("inverse iteration did not converge");
}

/// Parity measured on a symmetric grid from ||psi(x) -+ psi(-x)||.
inline Parity measured_parity(const std::vector<double>& v) {
    double even = 0.0;
    double odd = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double mirror = v[v.size() - 1 - i];
        even += (v[i] - mirror) * (v[i] - mirror);
        odd += (v[i] + mirror) * (v[i] + mirror);
    }
    if (even < 1e-12 * odd) return Parity::even;
    if (odd < 1e-12 * even) return Parity::odd;
    return Parity::none;
}

/// Lowest n_states eigenpairs of the second-order central-difference
/// discretisation of -1/2 d^2/dx^2 + 1/2 x^2 on the interior nodes of
/// [-L, L] with Dirichlet ends. Eigenvectors are normalised by the trapezoid
/// rule and share the sign convention of oscillator::eigenpair.
inline std::vector<oscillator::Eigenpair> fd_eigensolve(const FdConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.points);
    const double h = 2.0 * cfg.half_width / static_cast<double>(n + 1);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -cfg.half_width + h * static_cast<double>(i + 1);
    // nodes are symmetric up to rounding; mirror them exactly
    for (std::size_t i = 0; i < n / 2; ++i) x[n - 1 - i] = -x[i];
    if (n % 2 == 1) x[n / 2] = 0.0;

    Tridiagonal t;
    t.diag.resize(n);
    t.off.assign(n - 1, -0.5 / (h * h));
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = 1.0 / (h * h) + 0.5 * x[i] * x[i];

    const int cap = 10 * cfg.points;
    std::vector<oscillator::Eigenpair> out;
    for (int s = 0; s < cfg.n_states; ++s) {
        const double lambda = bisect_eigenvalue(t, s, cap);
        auto v = inverse_iteration(t, lambda, cap);
        oscillator::align_sign(v);
        // grid norm: sum v^2 h (the Dirichlet ends contribute zero)
        double s2 = 0.0;
        for (double y : v) s2 += y * y;
        const double scale = 1.0 / std::sqrt(s2 * h);
        for (double& y : v) y *= scale;
        double norm2 = 0.0;
        for (double y : v) norm2 += y * y * h;

        oscillator::Eigenpair p;
        p.n = s;
        p.epsilon = lambda;
        p.norm = std::sqrt(norm2);
        const Parity parity = measured_parity(v);
        p.psi = GridFunction(x, std::move(v), parity);
        out.push_back(std::move(p));
    }
    return out;
}

/// Exp-sinh quadrature of f over [0, inf): x = exp(pi/2 sinh t), trapezoid
/// in t with step halving until successive levels agree to rel_tol.
/// Integrable power singularities at 0 are absorbed by the double exponential
/// clustering; powers <= -1 are rejected.
template <RealFunction F>
double reference_quadrature(const F& f, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    const double p = origin_exponent(f);
    if (p <= -1.0 + 1e-3)
        throw SingularityTooStrong("integrand behaves like x^" + std::to_string(p) + " at the origin");

    constexpr double half_pi = 0.5 * std::numbers::pi;
    constexpr double t_max = 5.0;
    constexpr int max_level = 13;
    constexpr double negligible = 1e-18;

    auto term = [&](double t) {
        const double x = std::exp(half_pi * std::sinh(t));
        if (x == 0.0) return 0.0;
        const double v = static_cast<double>(f(x));
        if (v == 0.0) return 0.0;
        return v * half_pi * std::cosh(t) * x;
    };

    auto level_sum = [&](double h, double& abs_sum) {
        double sum = term(0.0);
        abs_sum = std::abs(sum);
        // right half: the tail must die out before t_max
        int quiet = 0;
        bool decayed = false;
        for (long j = 1;; ++j) {
            const double t = h * static_cast<double>(j);
            if (t > t_max) break;
            const double v = term(t);
            if (!std::isfinite(v))
                throw TailNotDecayed("integrand is not finite at x = " +
                                     std::to_string(std::exp(half_pi * std::sinh(t))));
            sum += v;
            abs_sum += std::abs(v);
            if (std::abs(v) <= negligible * abs_sum) {
                if (++quiet >= 4) {
                    decayed = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if (!decayed && abs_sum > 0.0)
            throw TailNotDecayed("integrand does not decay on [0, inf)");
        // left half: x -> 0
        quiet = 0;
        for (long j = 1;; ++j) {
            const double t = -h * static_cast<double>(j);
            if (t < -t_max) break;
            const double v = term(t);
            if (!std::isfinite(v)) throw SingularityTooStrong("integrand is not finite near the origin");
            sum += v;
            abs_sum += std::abs(v);
            if (std::abs(v) <= negligible * abs_sum) {
                if (++quiet >= 4) break;
            } else {
                quiet = 0;
            }
        }
        return sum * h;
    };

    double abs_sum = 0.0;
    double prev = level_sum(1.0, abs_sum);
    for (int level = 1; level <= max_level; ++level) {
        const double h = std::ldexp(1.0, -level);
        const double cur = level_sum(h, abs_sum);
        const double scale = abs_sum * h;
        if (std::abs(cur - prev) <= cfg.rel_tol * std::max(std::abs(cur), 1e-3 * scale) || scale == 0.0)
            return cur;
        prev = cur;
    }
    throw NoConvergence("exp-sinh quadrature did not converge");
}

}  // namespace qho::oracle
