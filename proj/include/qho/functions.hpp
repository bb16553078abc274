#pragma once

// Built-in test functions with known transforms.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qho/error.hpp"
#include "qho/grid.hpp"
#include "qho/transforms.hpp"

namespace qho {

struct TestFunction {
    std::string name;
    std::function<double(double)> f;
    /// Closed-form transforms where one is elementary.
    std::function<double(double)> sine;
    std::function<double(double)> cosine;
    /// Truncation radius that leaves a negligible tail.
    double radius = 12.0;

    const std::function<double(double)>& closed_form(TransformKind kind) const {
        return kind == TransformKind::sine ? sine : cosine;
    }
};

inline const std::vector<std::string>& test_function_names() {
    static const std::vector<std::string> names = {"exp", "gauss", "x_gauss", "x3_gauss"};
    return names;
}

inline TestFunction test_function(std::string_view name) {
    using transforms::kNorm;
    const double r2 = std::sqrt(2.0);
    if (name == "exp")
        return {"exp", [](double z) { return std::exp(-z); },
                [](double k) { return kNorm * k / (1.0 + k * k); },
                [](double k) { return kNorm / (1.0 + k * k); }, 40.0};
    if (name == "gauss")
        return {"gauss", [](double z) { return std::exp(-z * z); }, nullptr,
                [r2](double k) { return std::exp(-0.25 * k * k) / r2; }, 12.0};
    if (name == "x_gauss")
        return {"x_gauss", [](double z) { return z * std::exp(-z * z); },
                [r2](double k) { return k * std::exp(-0.25 * k * k) / (2.0 * r2); }, nullptr, 12.0};
    if (name == "x3_gauss")
        return {"x3_gauss", [](double z) { return z * z * z * std::exp(-z * z); },
                [r2](double k) { return k * (6.0 - k * k) * std::exp(-0.25 * k * k) / (8.0 * r2); }, nullptr,
                12.0};
    throw UnknownFunction("unknown test function '" + std::string(name) + "' (expected exp, gauss, x_gauss, x3_gauss)");
}

}  // namespace qho
