#include "genairy/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "genairy/errors.hpp"

namespace genairy::specfun {

namespace {

// Lanczos approximation, g = 7, nine terms (Godfrey's coefficient set).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554706,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

// Gamma(z) for z >= 1, where the series needs no reflection.
double lanczos_gamma(double z) {
    z -= 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma(double p) {
    if (!(p > 0.0 && p < 2.0)) {
        throw DomainError("gamma: argument " + describe(p) + " outside (0, 2)");
    }
    if (p == 1.0) return 1.0;
    // Shift into [1, 2) so the Lanczos sum is evaluated away from the pole.
    if (p < 1.0) return lanczos_gamma(p + 1.0) / p;
    return lanczos_gamma(p);
}

double reflection_check(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("reflection_check: argument " + describe(p) + " outside (0, 1)");
    }
    return gamma(p) * gamma(1.0 - p) * std::sin(p * std::numbers::pi) / std::numbers::pi;
}

}  // namespace genairy::specfun
