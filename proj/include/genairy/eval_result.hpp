#pragma once

#include <string_view>

namespace genairy {

enum class Method { series, quadrature, asymptotic };

constexpr std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::series: return "series";
        case Method::quadrature: return "quadrature";
        case Method::asymptotic: return "asymptotic";
    }
    return "unknown";
}

// Value returned by every evaluator. error_estimate is an a-posteriori
// estimate, not a bound.
struct EvalResult {
    double value = 0.0;
    double error_estimate = 0.0;
    Method method = Method::series;
};

// Sign of the linear term in the phase t^(n+1)/(n+1) + sign * x * t.
enum class Sign : int { plus = 1, minus = -1 };

constexpr double to_double(Sign s) noexcept { return static_cast<double>(static_cast<int>(s)); }

}  // namespace genairy
