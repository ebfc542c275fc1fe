#include "genairy/airy_asympt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "genairy/errors.hpp"

namespace genairy::asympt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_m(int m) {
    if (m < 1) throw DomainError("asymptotics: m must be >= 1");
}

}  // namespace

double alpha(int m, double x) {
    check_m(m);
    if (!(x < 0.0)) throw DomainError("alpha: requires x < 0");
    const double two_m = 2.0 * m;
    return two_m / (two_m + 1.0) * std::pow(-x, (two_m + 1.0) / two_m);
}

EvalResult asympt_pos(int m, double x) {
    check_m(m);
    if (!(x > 0.0)) throw DomainError("asympt_pos: requires x > 0");
    const double two_m = 2.0 * m;
    const double exponent = -two_m / (two_m + 1.0) * std::pow(x, (two_m + 1.0) / two_m);
    const double denom =
        std::sqrt(kPi) * std::sqrt(4.0 * m) * std::pow(x, (two_m - 1.0) / (4.0 * m));
    const double value = std::exp(exponent) / denom;
    const double err = std::abs(value) * std::pow(x, -(two_m + 1.0) / two_m);
    return {value, err, Method::asymptotic};
}

EvalResult asympt_neg(int m, double x) {
    check_m(m);
    if (!(x < 0.0)) throw DomainError("asympt_neg: requires x < 0");
    const double two_m = 2.0 * m;
    const double a = alpha(m, x);
    const double prefactor = 1.0 / (std::sqrt(kPi) * std::sqrt(static_cast<double>(m)) *
                                    std::pow(-x, (two_m - 1.0) / (4.0 * m)));
    double sum = 0.0;
    double envelope = 0.0;
    for (int k = 0; k < m; ++k) {
        const double angle = (1.0 + 2.0 * k) * kPi / two_m;
        const double growth = std::exp(a * std::cos(angle));
        sum += growth * std::sin(a * std::sin(angle) + (1.0 + 2.0 * k) * kPi / (4.0 * m));
        envelope += growth;
    }
    const double err = prefactor * envelope * std::pow(-x, -(two_m + 1.0) / two_m);
    return {prefactor * sum, err, Method::asymptotic};
}

EvalResult asympt_eval(int m, double x) {
    if (x > 0.0) return asympt_pos(m, x);
    if (x < 0.0) return asympt_neg(m, x);
    throw DomainError("asymptotics: undefined at x = 0");
}

}  // namespace genairy::asympt
