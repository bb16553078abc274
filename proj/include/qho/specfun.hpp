#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "qho/error.hpp"

namespace qho::specfun {

inline bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

/// Gamma function. Throws PoleError at 0, -1, -2, ...
inline double gamma(double z) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma has a pole at z = " + std::to_string(z));
    return std::tgamma(z);
}

/// 1/Gamma(z), continued by zero through the poles.
inline double reciprocal_gamma(double z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return 1.0 / std::tgamma(z);
}

/// cos(pi x), exact at integers and half-integers.
inline double cos_pi(double x) {
    const double r = std::fmod(std::abs(x), 2.0);
    if (r == 0.0) return 1.0;
    if (r == 1.0) return -1.0;
    if (r == 0.5 || r == 1.5) return 0.0;
    return std::cos(std::numbers::pi * r);
}

/// Arguments of Kummer's function 1F1(a1; b1; z).
struct KummerParams {
    double a1;
    double b1;
    double z;

    void validate() const {
        if (!std::isfinite(a1) || !std::isfinite(b1) || !std::isfinite(z))
            throw DomainError("Kummer parameters must be finite");
        if (is_nonpositive_integer(b1))
            throw DomainError("Kummer b1 must not be zero or a negative integer");
    }

    /// Series terminates when a1 is 0, -1, -2, ...
    bool terminates() const { return is_nonpositive_integer(a1); }
};

inline constexpr int kDefaultKummerTerms = 500;
inline constexpr double kKummerSeriesTol = 1e-15;
/// Below this |z| the two-term asymptotic form is not meaningful.
inline constexpr double kKummerAsymptoticThreshold = 25.0;

/// Power series of 1F1. Exact finite sum when a1 = -n; otherwise summed
/// until the last term is below 1e-15 of the partial sum.
inline double kummer_series(const KummerParams& p, int max_terms = kDefaultKummerTerms) {
    p.validate();
    if (max_terms <= 0) throw DomainError("max_terms must be positive");

    double term = 1.0;
    double sum = 1.0;
    if (p.terminates()) {
        const int degree = static_cast<int>(-p.a1);
        for (int j = 0; j < degree; ++j) {
            term *= (p.a1 + j) / (p.b1 + j) * p.z / (j + 1);
            sum += term;
        }
        return sum;
    }
    for (int j = 0; j < max_terms; ++j) {
        term *= (p.a1 + j) / (p.b1 + j) * p.z / (j + 1);
        sum += term;
        if (std::abs(term) < kKummerSeriesTol * std::abs(sum)) return sum;
    }
    throw NoConvergence("Kummer series did not converge in " + std::to_string(max_terms) + " terms");
}

/// Two-term large-z form of 1F1 on the positive real axis (real part).
/// The e^z branch drops out exactly when a1 is a gamma pole, and the
/// algebraic branch when b1 - a1 is.
inline double kummer_asymptotic(const KummerParams& p) {
    p.validate();
    if (p.z <= 0.0) throw DomainError("asymptotic Kummer form evaluated only for z > 0");
    const double algebraic = cos_pi(p.a1) * std::pow(p.z, -p.a1) * reciprocal_gamma(p.b1 - p.a1);
    const double rg = reciprocal_gamma(p.a1);
    const double exponential = rg == 0.0 ? 0.0 : std::exp(p.z + (p.a1 - p.b1) * std::log(p.z)) * rg;
    return gamma(p.b1) * (algebraic + exponential);
}

/// Physicists' Hermite polynomial H_n(x).
inline double hermite(int n, double x) {
    if (n < 0) throw DomainError("Hermite degree must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Generalized Laguerre polynomial L_n^(alpha)(x), x >= 0.
inline double laguerre(int n, double alpha, double x) {
    if (n < 0) throw DomainError("Laguerre degree must be nonnegative");
    if (x < 0.0) throw DomainError("Laguerre argument must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace qho::specfun
