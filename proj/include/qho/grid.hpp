#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qho/error.hpp"

namespace qho {

enum class Parity { none, even, odd };

/// Selects the unilateral transform: sine for odd functions, cosine for even.
enum class TransformKind { sine, cosine };

inline std::string_view to_string(TransformKind kind) {
    return kind == TransformKind::sine ? "sine" : "cosine";
}

inline std::string_view to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        default: return "none";
    }
}

inline TransformKind parse_kind(std::string_view s) {
    if (s == "sine") return TransformKind::sine;
    if (s == "cosine") return TransformKind::cosine;
    throw DomainError("unknown transform kind '" + std::string(s) + "'");
}

/// Parity that a function must have on the full line to be handled by `kind`.
constexpr Parity parity_of(TransformKind kind) {
    return kind == TransformKind::sine ? Parity::odd : Parity::even;
}

/// Anything callable as double -> double.
template <class F>
concept RealFunction = std::invocable<const F&, double> &&
                       std::convertible_to<std::invoke_result_t<const F&, double>, double>;

/// Real samples on a strictly increasing grid.
///
/// Acts as a callable through local cubic (four-point Lagrange) interpolation.
/// Past the last node the function is taken to be zero; before the first node
/// the end cubic is extrapolated.
class GridFunction {
public:
    GridFunction() = default;

    GridFunction(std::vector<double> grid, std::vector<double> values, Parity parity = Parity::none)
        : grid_(std::move(grid)), values_(std::move(values)), parity_(parity) {
        validate();
    }

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    Parity parity() const noexcept { return parity_; }
    std::size_t size() const noexcept { return grid_.size(); }
    bool empty() const noexcept { return grid_.empty(); }

    double operator()(double x) const {
        const std::size_t n = grid_.size();
        if (n == 0 || x > grid_.back()) return 0.0;
        if (n == 1) return x == grid_.front() ? values_.front() : 0.0;
        if (n < 4) return linear(x);

        auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
        std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
        if (i >= n - 1) i = n - 2;
        // stencil i-1 .. i+2, clamped into range
        std::size_t s = i == 0 ? 0 : i - 1;
        if (s + 4 > n) s = n - 4;

        double sum = 0.0;
        for (std::size_t a = s; a < s + 4; ++a) {
            double w = 1.0;
            for (std::size_t b = s; b < s + 4; ++b) {
                if (b != a) w *= (x - grid_[b]) / (grid_[a] - grid_[b]);
            }
            sum += w * values_[a];
        }
        return sum;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    double linear(double x) const {
        auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
        std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
        if (i >= grid_.size() - 1) i = grid_.size() - 2;
        double t = (x - grid_[i]) / (grid_[i + 1] - grid_[i]);
        return (1.0 - t) * values_[i] + t * values_[i + 1];
    }

    void validate() const {
        if (grid_.size() != values_.size())
            throw DomainError("grid and values differ in length");
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i]))
                throw DomainError("non-finite grid node or sample");
            if (i > 0 && !(grid_[i] > grid_[i - 1]))
                throw DomainError("grid is not strictly increasing");
        }
        if (parity_ == Parity::odd) {
            auto zero = std::find(grid_.begin(), grid_.end(), 0.0);
            if (zero != grid_.end()) {
                double v = values_[static_cast<std::size_t>(zero - grid_.begin())];
                if (std::abs(v) > 1e-12 * std::max(1.0, max_abs()))
                    throw DomainError("odd function must vanish at the origin");
            }
        }
    }

    std::vector<double> grid_;
    std::vector<double> values_;
    Parity parity_ = Parity::none;
};

/// `count` equally spaced points covering [first, last].
inline std::vector<double> linspace(double first, double last, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = first;
        return out;
    }
    const double h = (last - first) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + h * static_cast<double>(i);
    out.back() = last;
    return out;
}

/// Points first, first+step, ... up to last (inclusive when it lands on a node).
inline std::vector<double> arange(double first, double last, double step) {
    const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + step * static_cast<double>(i);
    return out;
}

/// Symmetric grid on [-half_width, half_width] with 0 as a node.
inline std::vector<double> symmetric_grid(double half_width, double spacing) {
    const auto half = static_cast<std::size_t>(std::llround(half_width / spacing));
    std::vector<double> out(2 * half + 1);
    for (std::size_t i = 0; i <= 2 * half; ++i)
        out[i] = spacing * (static_cast<double>(i) - static_cast<double>(half));
    return out;
}

template <RealFunction F>
std::vector<double> sample(const F& f, std::span<const double> grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
    return out;
}

/// Composite trapezoid rule over sampled data.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at `z`
/// from nodes `x`. Result is indexed [order][node].
inline std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x,
                                                   int max_order) {
    const std::size_t n = x.size();
    const auto m = static_cast<std::size_t>(max_order);
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

}  // namespace qho
