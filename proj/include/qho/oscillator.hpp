#pragma once

// Harmonic oscillator via unilateral transforms.
//
// With psi = phi e^{x^2/2}, the sine/cosine transform of phi obeys a first
// order ODE in k whose solution k^a e^{-k^2/4} (a = epsilon - 1/2) exists for
// every real a. The spectrum follows from which exponents survive the
// admissibility conditions; eigenfunctions follow from inverting the
// transform and extending the half-line solution with the right parity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qho/error.hpp"
#include "qho/grid.hpp"
#include "qho/quadrature.hpp"
#include "qho/specfun.hpp"
#include "qho/transforms.hpp"

namespace qho::oscillator {

/// Candidate exponent a of Phi(k) = k^a e^{-k^2/4}, the transform kind it is
/// meant for, and the branch index m of k^a.
struct CandidateExponent {
    double a = 0.0;
    TransformKind kind = TransformKind::cosine;
    int branch = 0;

    double epsilon() const { return a + 0.5; }
};

struct Admissibility {
    bool parseval_ok = false;
    bool moment_ok = false;
    bool derivative_conditions_ok = false;
    bool parity_ok = false;
    bool accepted = false;
    std::vector<std::string> reasons;
};

struct Eigenpair {
    int n = 0;
    double epsilon = 0.0;
    GridFunction psi;
    double norm = 0.0;
};

inline constexpr double kIntegerTol = 1e-9;
/// Residual grids stay clear of the singular point k = 0.
inline constexpr double kMinK = 1e-6;
inline constexpr double kClosedFormTol = 1e-6;
inline constexpr double kContinuityTol = 1e-6;
inline constexpr double kMaxResidualSpacing = 1e-2;
inline constexpr double kTailTol = 1e-10;

/// Nearest integer if `a` is within kIntegerTol of one.
inline std::optional<long> as_integer(double a) {
    const double r = std::round(a);
    if (std::abs(a - r) <= kIntegerTol) return static_cast<long>(r);
    return std::nullopt;
}

/// Principal-branch |k^a| e^{-k^2/4} (integration constant set to 1).
inline double phi_transform(const CandidateExponent& c, double k) {
    if (!(k > 0.0)) throw DomainError("Phi(k) is evaluated only for k > 0");
    return std::exp(c.a * std::log(k) - 0.25 * k * k);
}

/// Overall phase e^{i 2 pi m a} of branch m. Integer exponents are single valued.
inline std::complex<double> branch_phase(const CandidateExponent& c) {
    if (auto n = as_integer(c.a)) return {1.0, 0.0};
    const double turns = std::fmod(static_cast<double>(c.branch) * c.a, 1.0);
    if (turns == 0.5 || turns == -0.5) return {-1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

/// Phi on branch m: the principal value times the branch phase.
inline std::complex<double> phi_transform_on_branch(const CandidateExponent& c, double k) {
    return branch_phase(c) * phi_transform(c, k);
}

/// Residual of dPhi/dk + (k/2 + (1 - 2 eps)/(2k)) Phi = 0 with the analytic
/// derivative of k^a e^{-k^2/4}. Each point is scaled by max(1, |Phi'| + |c Phi|).
inline double transformed_ode_residual(const CandidateExponent& c, double epsilon,
                                       std::span<const double> k_grid) {
    double worst = 0.0;
    for (double k : k_grid) {
        if (!(k > 0.0)) throw DomainError("transformed ODE is singular at k = 0");
        const double phi = phi_transform(c, k);
        const double dphi = (c.a / k - 0.5 * k) * phi;
        const double coef = 0.5 * k + (1.0 - 2.0 * epsilon) / (2.0 * k);
        const double scale = std::max(1.0, std::abs(dphi) + std::abs(coef * phi));
        worst = std::max(worst, std::abs(dphi + coef * phi) / scale);
    }
    return worst;
}

/// Admissibility of an exponent:
///  - Parseval (square integrable Phi): a > -1/2
///  - finite moments at the origin: a > -1
///  - derivative conditions at k = 0 (finiteness against the gamma-pole
///    zeros of d^n Phi/dk^n): a is a nonnegative integer
///  - parity: a even for cosine, odd for sine.
inline Admissibility classify_exponent(const CandidateExponent& c) {
    Admissibility r;
    r.parseval_ok = c.a > -0.5;
    r.moment_ok = c.a > -1.0;
    const auto n = as_integer(c.a);
    r.derivative_conditions_ok = n.has_value() && *n >= 0;
    r.parity_ok = n.has_value() && ((*n % 2 == 0) == (c.kind == TransformKind::cosine));
    r.accepted = r.parseval_ok && r.moment_ok && r.derivative_conditions_ok && r.parity_ok;
    if (!r.parseval_ok) r.reasons.emplace_back("parseval");
    if (!r.moment_ok) r.reasons.emplace_back("moment");
    if (!r.derivative_conditions_ok) r.reasons.emplace_back("derivative_conditions");
    if (!r.parity_ok) r.reasons.emplace_back("parity");
    return r;
}

/// Closed form of the inverse transform of k^n e^{-k^2/4} up to a constant:
/// e^{-z^2} 1F1(-n/2; 1/2; z^2) (cosine) or z e^{-z^2} 1F1((1-n)/2; 3/2; z^2) (sine).
inline double inversion_closed_form(int n, TransformKind kind, double zeta) {
    const double z2 = zeta * zeta;
    if (kind == TransformKind::cosine)
        return std::exp(-z2) * specfun::kummer_series({-0.5 * n, 0.5, z2});
    return zeta * std::exp(-z2) * specfun::kummer_series({0.5 * (1 - n), 1.5, z2});
}

/// Exact constant between the numerical inversion of k^n e^{-k^2/4} and
/// inversion_closed_form (Gaussian-moment tables).
inline double inversion_constant(int n, TransformKind kind) {
    if (kind == TransformKind::cosine)
        return transforms::kNorm * std::pow(2.0, n) * std::tgamma(0.5 * (n + 1));
    return transforms::kNorm * std::pow(2.0, n + 1) * std::tgamma(0.5 * n + 1.0);
}

struct Inversion {
    /// sqrt(2/pi) int_0^inf k^a e^{-k^2/4} {cos,sin}(k zeta) dk on the grid.
    GridFunction numeric;
    /// Scaled hypergeometric closed form, present for admissible integer a.
    std::optional<GridFunction> closed_form;
    double scale = 0.0;
    /// max |numeric - closed_form| / max |numeric|.
    double mismatch = 0.0;
};

namespace detail {

inline auto phi_callable(const CandidateExponent& c) {
    return [c](double k) { return k > 0.0 ? phi_transform(c, k) : 0.0; };
}

/// Numerical inversion at each zeta, with a shared tail check on Phi.
inline std::vector<double> invert_values(const CandidateExponent& c, std::span<const double> zeta,
                                         const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(c.a > -0.5)) throw DomainError("inversion requires a > -1/2 (square-integrable Phi)");
    const auto phi = phi_callable(c);
    const auto mass = half_line_mass(phi, cfg);
    require_decay(mass, cfg);
    const double abs_tol = cfg.rel_tol * mass.core;
    std::vector<double> out(zeta.size());
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        if (zeta[i] < 0.0) throw DomainError("inversion grid must be nonnegative");
        out[i] = transforms::transform_at(phi, c.kind, zeta[i], abs_tol, cfg);
    }
    return out;
}

}  // namespace detail

/// Inverts Phi = k^a e^{-k^2/4} numerically. For admissible a = n the
/// hypergeometric closed form is matched at the first grid point where the
/// numerical value exceeds 1e-12 and must agree to kClosedFormTol (relative
/// to the sup norm), else ClosedFormMismatch.
inline Inversion invert_candidate(const CandidateExponent& c, std::span<const double> zeta_grid,
                                  const QuadratureConfig& cfg = {}) {
    Inversion inv;
    auto values = detail::invert_values(c, zeta_grid, cfg);
    std::vector<double> grid(zeta_grid.begin(), zeta_grid.end());
    inv.numeric = GridFunction(grid, values, parity_of(c.kind));

    if (!classify_exponent(c).accepted) return inv;
    const int n = static_cast<int>(*as_integer(c.a));
    std::vector<double> closed(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) closed[i] = inversion_closed_form(n, c.kind, grid[i]);

    std::size_t ref = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(values[i]) > 1e-12 && closed[i] != 0.0) {
            ref = i;
            break;
        }
    }
    if (ref == grid.size()) throw ClosedFormMismatch("no grid point with a nonvanishing inversion");
    inv.scale = values[ref] / closed[ref];
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        closed[i] *= inv.scale;
        diff = std::max(diff, std::abs(values[i] - closed[i]));
    }
    inv.mismatch = diff / inv.numeric.max_abs();
    if (inv.mismatch > kClosedFormTol)
        throw ClosedFormMismatch("numeric inversion deviates from closed form by " + std::to_string(inv.mismatch));
    inv.closed_form = GridFunction(std::move(grid), std::move(closed), parity_of(c.kind));
    return inv;
}

struct GrowthDiagnostic {
    /// |psi| at the last probe exceeds |psi| at every earlier probe.
    bool growing = false;
    std::vector<double> zeta;
    std::vector<double> psi;
};

/// Probe radii for the growth diagnostic.
inline const std::vector<double> kDefaultGrowthProbe = {2.0, 3.0, 4.0, 5.0};

/// psi(zeta) = e^{zeta^2/2} phi(zeta) from the numerical inversion. A
/// non-quantized exponent makes |psi| grow without bound.
inline GrowthDiagnostic growth_diagnostic(const CandidateExponent& c,
                                          std::span<const double> zeta_probe = kDefaultGrowthProbe,
                                          const QuadratureConfig& cfg = {}) {
    if (zeta_probe.size() < 2) throw DomainError("growth probe needs at least two radii");
    GrowthDiagnostic g;
    g.zeta.assign(zeta_probe.begin(), zeta_probe.end());
    const auto phi = detail::invert_values(c, zeta_probe, cfg);
    g.psi.resize(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) g.psi[i] = std::exp(0.5 * g.zeta[i] * g.zeta[i]) * phi[i];
    double earlier = 0.0;
    for (std::size_t i = 0; i + 1 < g.psi.size(); ++i) earlier = std::max(earlier, std::abs(g.psi[i]));
    g.growing = std::abs(g.psi.back()) > earlier;
    return g;
}

namespace detail {

inline void require_fine_grid(const std::vector<double>& x, std::size_t min_points) {
    if (x.size() < min_points) throw GridTooCoarse("grid has too few points for second differences");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] - x[i - 1] > kMaxResidualSpacing)
            throw GridTooCoarse("grid spacing " + std::to_string(x[i] - x[i - 1]) + " exceeds " +
                                std::to_string(kMaxResidualSpacing));
}

/// Three-point first and second derivative weights at interior node i.
struct Stencil3 {
    double d1[3];
    double d2[3];
};

inline Stencil3 stencil3(const std::vector<double>& x, std::size_t i) {
    auto w = fd_weights(x[i], std::span<const double>(x.data() + i - 1, 3), 2);
    return {{w[1][0], w[1][1], w[1][2]}, {w[2][0], w[2][1], w[2][2]}};
}

}  // namespace detail

/// max over interior nodes of |phi'' + 2 zeta phi' + (2 eps + 1) phi| / max|phi|.
inline double kummer_ode_residual(const GridFunction& phi, double epsilon) {
    const auto& x = phi.grid();
    const auto& v = phi.values();
    detail::require_fine_grid(x, 3);
    const double scale = phi.max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const auto s = detail::stencil3(x, i);
        const double d1 = s.d1[0] * v[i - 1] + s.d1[1] * v[i] + s.d1[2] * v[i + 1];
        const double d2 = s.d2[0] * v[i - 1] + s.d2[1] * v[i] + s.d2[2] * v[i + 1];
        worst = std::max(worst, std::abs(d2 + 2.0 * x[i] * d1 + (2.0 * epsilon + 1.0) * v[i]));
    }
    return worst / scale;
}

enum class Extension { symmetric, antisymmetric };

/// Jumps of psi and psi' across the origin for a given extension.
struct Continuity {
    double value_jump = 0.0;
    double slope_jump = 0.0;
};

/// Builds psi on the full line from the half-line phi (grid starting at 0):
/// psi(+-zeta) = e^{zeta^2/2} phi(zeta) times +1 / +-1. The extension must
/// keep psi and psi' continuous at 0, which rules out the antisymmetric
/// extension of an even phi and the symmetric extension of an odd one.
inline GridFunction parity_extend(const GridFunction& phi_half, int n, Extension ext,
                                  Continuity* continuity = nullptr) {
    if (n < 0) throw DomainError("n must be nonnegative");
    const auto& z = phi_half.grid();
    if (z.size() < 3 || z.front() != 0.0) throw DomainError("half-line function must start at 0");
    const Parity wanted = n % 2 == 0 ? Parity::even : Parity::odd;
    if (phi_half.parity() != Parity::none && phi_half.parity() != wanted)
        throw ParityMismatch("half-line function is " + std::string(to_string(phi_half.parity())) +
                             " but n = " + std::to_string(n) + " needs " + std::string(to_string(wanted)));

    std::vector<double> half(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) half[i] = std::exp(0.5 * z[i] * z[i]) * phi_half.values()[i];
    double scale = 0.0;
    for (double v : half) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw DomainError("cannot extend the zero function");

    const double sign = ext == Extension::symmetric ? 1.0 : -1.0;
    const std::size_t pts = std::min<std::size_t>(7, z.size());
    auto w = fd_weights(0.0, std::span<const double>(z.data(), pts), 1);
    double right_slope = 0.0;
    for (std::size_t i = 0; i < pts; ++i) right_slope += w[1][i] * half[i];
    // mirrored side: psi(-zeta) = sign psi(zeta), so psi'(0-) = -sign psi'(0+)
    Continuity c;
    c.value_jump = std::abs(half[0] - sign * half[0]) / scale;
    c.slope_jump = std::abs(right_slope + sign * right_slope) / scale;
    if (continuity) *continuity = c;
    if (c.value_jump > kContinuityTol)
        throw ParityMismatch("antisymmetric extension breaks continuity of psi at 0 (jump " +
                             std::to_string(c.value_jump) + ")");
    if (c.slope_jump > kContinuityTol)
        throw ParityMismatch("symmetric extension breaks continuity of psi' at 0 (jump " +
                             std::to_string(c.slope_jump) + ")");

    const std::size_t m = z.size();
    std::vector<double> x(2 * m - 1);
    std::vector<double> psi(2 * m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        x[m - 1 + i] = z[i];
        x[m - 1 - i] = -z[i];
        psi[m - 1 + i] = half[i];
        psi[m - 1 - i] = sign * half[i];
    }
    if (ext == Extension::antisymmetric) psi[m - 1] = 0.0;
    return GridFunction(std::move(x), std::move(psi),
                        ext == Extension::symmetric ? Parity::even : Parity::odd);
}

/// Extension matching the parity of n.
inline GridFunction parity_extend(const GridFunction& phi_half, int n) {
    return parity_extend(phi_half, n, n % 2 == 0 ? Extension::symmetric : Extension::antisymmetric);
}

/// Flips the sign so that psi is positive beyond its outermost node, i.e. at
/// the rightmost sample above 1e-3 of the peak.
inline void align_sign(std::vector<double>& v) {
    double peak = 0.0;
    for (double y : v) peak = std::max(peak, std::abs(y));
    for (std::size_t i = v.size(); i-- > 0;) {
        if (std::abs(v[i]) > 1e-3 * peak) {
            if (v[i] < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

namespace detail {

inline void require_symmetric(const std::vector<double>& x) {
    if (x.size() < 3) throw DomainError("full-line grid too short");
    const double span = std::max(std::abs(x.front()), std::abs(x.back()));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i] + x[x.size() - 1 - i]) > 1e-12 * span)
            throw DomainError("grid is not symmetric about 0");
}

/// Normalises samples on x to unit L2 norm (trapezoid) and packs an Eigenpair.
inline Eigenpair normalized_eigenpair(int n, std::vector<double> x, std::vector<double> psi) {
    align_sign(psi);
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    if (std::max(std::abs(psi.front()), std::abs(psi.back())) > kTailTol * peak)
        throw GridTooSmall("eigenfunction tail at the grid edge exceeds 1e-10 of the peak");
    std::vector<double> sq(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) sq[i] = psi[i] * psi[i];
    const double scale = 1.0 / std::sqrt(trapezoid(x, sq));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] *= scale;
        sq[i] = psi[i] * psi[i];
    }
    Eigenpair p;
    p.n = n;
    p.epsilon = n + 0.5;
    p.norm = std::sqrt(trapezoid(x, sq));
    p.psi = GridFunction(std::move(x), std::move(psi), n % 2 == 0 ? Parity::even : Parity::odd);
    return p;
}

}  // namespace detail

/// eps_n = n + 1/2 with psi_n = N_n e^{-x^2/2} H_n(x) on a symmetric grid.
inline Eigenpair eigenpair(int n, std::span<const double> x_grid) {
    if (n < 0) throw DomainError("n must be nonnegative");
    std::vector<double> x(x_grid.begin(), x_grid.end());
    detail::require_symmetric(x);
    std::vector<double> psi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) psi[i] = std::exp(-0.5 * x[i] * x[i]) * specfun::hermite(n, x[i]);
    return detail::normalized_eigenpair(n, std::move(x), std::move(psi));
}

/// The transform route end to end: invert k^n e^{-k^2/4} with the kind of
/// n's parity on [0, check_radius], confirm the hypergeometric closed form,
/// then evaluate that closed form on the half of x_grid and parity-extend.
inline Eigenpair solve_by_transform(int n, std::span<const double> x_grid, const QuadratureConfig& cfg = {},
                                    double check_radius = 6.0, double check_spacing = 0.05) {
    if (n < 0) throw DomainError("n must be nonnegative");
    std::vector<double> x(x_grid.begin(), x_grid.end());
    detail::require_symmetric(x);
    const CandidateExponent c{static_cast<double>(n), n % 2 == 0 ? TransformKind::cosine : TransformKind::sine};
    const auto check = arange(0.0, check_radius, check_spacing);
    const auto inv = invert_candidate(c, check, cfg);

    std::vector<double> zeta;
    for (double v : x)
        if (v >= 0.0) zeta.push_back(v);
    std::vector<double> phi(zeta.size());
    for (std::size_t i = 0; i < zeta.size(); ++i) phi[i] = inv.scale * inversion_closed_form(n, c.kind, zeta[i]);
    const auto full = parity_extend(GridFunction(zeta, phi, parity_of(c.kind)), n);
    return detail::normalized_eigenpair(n, full.grid(), full.values());
}

/// max interior |psi'' + (2 eps - x^2) psi| / max|psi|.
inline double schrodinger_residual(const Eigenpair& p) {
    const auto& x = p.psi.grid();
    const auto& v = p.psi.values();
    detail::require_fine_grid(x, 3);
    const double scale = p.psi.max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const auto s = detail::stencil3(x, i);
        const double d2 = s.d2[0] * v[i - 1] + s.d2[1] * v[i] + s.d2[2] * v[i + 1];
        worst = std::max(worst, std::abs(d2 + (2.0 * p.epsilon - x[i] * x[i]) * v[i]));
    }
    return worst / scale;
}

/// Largest |<psi_m, psi_n> - delta_mn| over all pairs (trapezoid on the shared grid).
inline double orthonormality_defect(std::span<const Eigenpair> pairs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i; j < pairs.size(); ++j) {
            const auto& a = pairs[i].psi;
            const auto& b = pairs[j].psi;
            if (a.grid() != b.grid()) throw DomainError("eigenpairs live on different grids");
            std::vector<double> prod(a.size());
            for (std::size_t q = 0; q < a.size(); ++q) prod[q] = a.values()[q] * b.values()[q];
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(trapezoid(a.grid(), prod) - target));
        }
    }
    return worst;
}

/// eps_n = n + 1/2 for n = 0..n_max.
inline std::vector<double> spectrum(int n_max) {
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = n + 0.5;
    return out;
}

/// One row of an exponent scan.
struct ScanRow {
    double a = 0.0;
    Admissibility admissibility;
    /// Growth of e^{zeta^2/2} phi; computed for rejected a > -1/2 only.
    std::optional<bool> growth;
};

inline ScanRow scan_exponent(double a, TransformKind kind, const QuadratureConfig& cfg = {}) {
    ScanRow row;
    row.a = a;
    const CandidateExponent c{a, kind};
    row.admissibility = classify_exponent(c);
    if (!row.admissibility.accepted && a > -0.5)
        row.growth = growth_diagnostic(c, kDefaultGrowthProbe, cfg).growing;
    return row;
}

/// Exponents a_min, a_min + step, ... <= a_max; values within kIntegerTol of
/// an integer are snapped to it.
inline std::vector<double> scan_points(double a_min, double a_max, double step) {
    if (!(a_min < a_max)) throw DomainError("scan needs a_min < a_max");
    if (!(step > 0.0)) throw DomainError("scan step must be positive");
    std::vector<double> out;
    for (long j = 0;; ++j) {
        double a = a_min + step * static_cast<double>(j);
        if (a > a_max + 1e-9 * step) break;
        if (std::abs(a - std::round(a)) < 1e-9) a = std::round(a) + 0.0;
        out.push_back(a);
    }
    return out;
}

inline std::vector<ScanRow> scan(double a_min, double a_max, double step, TransformKind kind,
                                 const QuadratureConfig& cfg = {}) {
    std::vector<ScanRow> rows;
    for (double a : scan_points(a_min, a_max, step)) rows.push_back(scan_exponent(a, kind, cfg));
    return rows;
}

}  // namespace qho::oscillator
