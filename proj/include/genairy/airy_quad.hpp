#pragma once

#include <span>
#include <vector>

#include "genairy/eval_result.hpp"

namespace genairy::quad {

inline constexpr double kMaxAbsX = 20.0;

struct QuadratureConfig {
    double abs_tol = 1e-10;
    int max_half_periods = 200;
    int acceleration_depth = 12;
    int panel_budget = 10000;
};

// t^power * cos(t^(n+1)/(n+1) + sign*x*t + quarter_turns*pi/2) on t >= 0.
struct OscillatoryIntegrand {
    int n = 2;
    Sign sign = Sign::plus;
    double x = 0.0;
    int power = 0;
    int quarter_turns = 0;

    double phase(double t) const noexcept;
    double phase_derivative(double t) const noexcept;
    // The phase is accumulated in double-double so cos() sees the exact
    // argument even where the integral is exponentially small.
    double operator()(double t) const noexcept;
    // Value at the point base + offset, which need not be representable.
    double at(double base, double offset) const noexcept;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

// Head/tail split point: past every real stationary point of the phase and
// past the maximum of t^power / phase'(t).
double cutoff(const OscillatoryIntegrand& f);

// Adaptive Clenshaw-Curtis (17/33-point nested panels) of f on [a, b].
// ConvergenceError when the panel budget is exhausted.
Estimate adaptive_integral(const OscillatoryIntegrand& f, double a, double b, double abs_tol,
                           int panel_budget);

// Integral of f over [0, T] to cfg.abs_tol / 2.
Estimate head_integral(const OscillatoryIntegrand& f, double T, const QuadratureConfig& cfg);

// Integral of f over [T, inf): the stretch up to the first zero of the
// cosine, then half-period lumps between consecutive zeros summed as an
// alternating series with iterated Aitken acceleration.
Estimate tail_integral(const OscillatoryIntegrand& f, double T, const QuadratureConfig& cfg);

// The first `count` half-period lumps of the tail past T.
std::vector<double> tail_lumps(const OscillatoryIntegrand& f, double T, int count);

// Iterated Aitken delta-squared on a sequence of partial sums, up to `depth`
// levels; returns the last entry of the deepest column.
double aitken_accelerate(std::span<const double> partial_sums, int depth);

// (1/pi) int_0^inf cos(t^(n+1)/(n+1) + sign*x*t) dt for n >= 2, |x| <= 20.
EvalResult v_pm(int n, Sign sign, double x, const QuadratureConfig& cfg = {});

// k-th x-derivative: sign^k (1/pi) int_0^inf t^k cos(phase + k*pi/2) dt, 0 <= k <= n-1.
EvalResult v_pm_derivative(int n, Sign sign, double x, int k, const QuadratureConfig& cfg = {});

// Closed form of int_0^inf t^k cos(t^(n+1)/(n+1) + k*pi/2) dt,
// (n+1)^((k+1)/(n+1) - 1) Gamma((k+1)/(n+1)) cos((k+1)pi/(2(n+1)) + k*pi/2).
double moment_integral(int n, int k);

// The same integral evaluated numerically by the head/tail machinery.
Estimate moment_integral_numeric(int n, int k, const QuadratureConfig& cfg = {});

}  // namespace genairy::quad
