#include "genairy/airy_quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "genairy/errors.hpp"
#include "genairy/specfun.hpp"
#include "genairy/summation.hpp"

namespace genairy::quad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;
};

DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DoubleDouble mul(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

DoubleDouble div(DoubleDouble a, double b) {
    const double q1 = a.hi / b;
    const DoubleDouble p = two_prod(q1, b);
    const double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q1, r);
}

DoubleDouble add(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

// Nested Clenshaw-Curtis rules on [-1, 1]: 33 points, and the 17-point rule
// on every other node.
struct ClenshawCurtis {
    static constexpr int kN = 32;
    // Node k sits at 1 - from_right[k] = -1 + from_left[k], both stored so a
    // panel's end nodes land exactly on its end points.
    std::array<double, kN + 1> from_right{};
    std::array<double, kN + 1> from_left{};
    std::array<double, kN + 1> fine{};
    std::array<double, kN / 2 + 1> coarse{};

    ClenshawCurtis() {
        std::array<double, kN + 1> nodes{};
        fill(kN, nodes.data(), fine.data());
        std::array<double, kN / 2 + 1> coarse_nodes{};
        fill(kN / 2, coarse_nodes.data(), coarse.data());
        for (int k = 0; k <= kN; ++k) {
            const double half_angle = std::sin(0.5 * k * kPi / kN);
            const double half_co = std::cos(0.5 * k * kPi / kN);
            from_right[k] = 2.0 * half_angle * half_angle;
            from_left[k] = 2.0 * half_co * half_co;
        }
        from_right[0] = 0.0;
        from_left[kN] = 0.0;
    }

    // cos(m*pi/n) is looked up with m reduced mod 2n; evaluating cos(2*j*theta)
    // directly costs about 1e-14 in the weights.
    static void fill(int n, double* x, double* w) {
        std::vector<double> table(static_cast<std::size_t>(2 * n));
        for (int m = 0; m < 2 * n; ++m) table[m] = std::cos(m * kPi / n);
        const auto cos_pi_over_n = [&](long m) { return table[static_cast<std::size_t>(m % (2 * n))]; };
        const double nn = static_cast<double>(n) * n - 1.0;
        for (int k = 0; k <= n; ++k) {
            x[k] = cos_pi_over_n(k);
            double v = 1.0;
            for (int j = 1; j < n / 2; ++j) v -= 2.0 * cos_pi_over_n(2L * j * k) / (4.0 * j * j - 1.0);
            v -= cos_pi_over_n(static_cast<long>(n) * k) / nn;
            w[k] = (k == 0 || k == n) ? 1.0 / nn : 2.0 * v / n;
        }
    }
};

const ClenshawCurtis& cc_rule() {
    static const ClenshawCurtis rule;
    return rule;
}

struct PanelResult {
    double fine = 0.0;
    double coarse = 0.0;
    double abs_fine = 0.0;
};

PanelResult integrate_panel(const OscillatoryIntegrand& f, double a, double b) {
    const auto& rule = cc_rule();
    const double half = 0.5 * (b - a);
    CompensatedSum fine;
    CompensatedSum coarse;
    double abs_fine = 0.0;
    for (int k = 0; k <= ClenshawCurtis::kN; ++k) {
        const double fx = 2 * k <= ClenshawCurtis::kN ? f.at(b, -half * rule.from_right[k])
                                                      : f.at(a, half * rule.from_left[k]);
        fine += rule.fine[k] * fx;
        abs_fine += std::abs(rule.fine[k] * fx);
        if (k % 2 == 0) coarse += rule.coarse[k / 2] * fx;
    }
    return {half * fine.value(), half * coarse.value(), std::abs(half) * abs_fine};
}

// Smallest t >= lo with phase(t) = target, for phase increasing on [lo, inf)
// and phase(lo) <= target. Newton, falling back to bisection.
double invert_phase(const OscillatoryIntegrand& f, double target, double lo) {
    const double np1 = f.n + 1.0;
    double hi = std::max(lo, 1.0);
    while (f.phase(hi) < target) hi *= 2.0;
    double t = std::pow(np1 * std::max(target, 0.0), 1.0 / np1);
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double g = f.phase(t) - target;
        if (g > 0.0) hi = t; else lo = t;
        const double step = g / f.phase_derivative(t);
        double next = t - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-14 * std::abs(next) || hi - lo <= 1e-14 * hi) return next;
        t = next;
    }
    return t;
}

// Phase values where cos(phase + quarter_turns*pi/2) vanishes: the j-th one
// past `from`.
struct ZeroLadder {
    double offset;  // zeros at (m + 1/2 - quarter_turns/2) * pi
    long first;

    ZeroLadder(const OscillatoryIntegrand& f, double from)
        : offset(0.5 - 0.5 * f.quarter_turns),
          first(static_cast<long>(std::ceil(from / kPi - offset))) {
        if ((first + offset) * kPi < from) ++first;
    }
    double at(long j) const { return (static_cast<double>(first + j) + offset) * kPi; }
};

double lump_tolerance(const QuadratureConfig& cfg) {
    return cfg.abs_tol / (8.0 * std::max(cfg.max_half_periods, 1));
}

void check_order(int n, const char* where) {
    if (n < 2) throw DomainError(std::string(where) + ": order must be >= 2");
}

}  // namespace

double OscillatoryIntegrand::phase(double t) const noexcept {
    return std::pow(t, n + 1) / (n + 1) + to_double(sign) * x * t;
}

double OscillatoryIntegrand::phase_derivative(double t) const noexcept {
    return std::pow(t, n) + to_double(sign) * x;
}

double OscillatoryIntegrand::operator()(double t) const noexcept { return at(t, 0.0); }

double OscillatoryIntegrand::at(double base, double offset) const noexcept {
    const DoubleDouble t = two_sum(base, offset);
    DoubleDouble p = t;
    for (int i = 0; i < n; ++i) p = mul(p, t);
    p = div(p, n + 1.0);
    const double sx = to_double(sign) * x;
    DoubleDouble linear = two_prod(sx, t.hi);
    linear.lo += sx * t.lo;
    const DoubleDouble ph = add(p, linear);

    const double c = std::cos(ph.hi);
    const double s = std::sin(ph.hi);
    const double cos_phase = c - s * ph.lo;
    const double sin_phase = s + c * ph.lo;
    double value = 0.0;
    switch (((quarter_turns % 4) + 4) % 4) {
        case 0: value = cos_phase; break;
        case 1: value = -sin_phase; break;
        case 2: value = -cos_phase; break;
        default: value = sin_phase; break;
    }
    return power == 0 ? value : value * std::pow(t.hi, power);
}

double cutoff(const OscillatoryIntegrand& f) {
    const double ax = std::abs(f.x);
    double T = std::max(1.0, std::pow(2.0 * ax, 1.0 / f.n) + 1.0);
    const double sx = to_double(f.sign) * f.x;
    if (f.power > 0 && sx > 0.0 && f.power < f.n) {
        // t^power / (t^n + sx) decreases once (n - power) t^n > power * sx.
        T = std::max(T, std::pow(f.power * sx / (f.n - f.power), 1.0 / f.n) + 1.0);
    }
    return T;
}

Estimate adaptive_integral(const OscillatoryIntegrand& f, double a, double b, double abs_tol,
                           int panel_budget) {
    if (!(b > a)) return {0.0, 0.0};
    const double length = b - a;

    // Pre-split so no initial panel spans more than about pi of phase.
    constexpr int kSamples = 64;
    double variation = 0.0;
    double prev = f.phase(a);
    for (int i = 1; i <= kSamples; ++i) {
        const double cur = f.phase(a + length * i / kSamples);
        variation += std::abs(cur - prev);
        prev = cur;
    }
    const int initial = std::max(1, static_cast<int>(std::ceil(variation / kPi)));
    if (initial > panel_budget) throw ConvergenceError("quadrature: subdivision limit reached");

    struct Panel {
        double a, b;
    };
    std::vector<Panel> stack;
    stack.reserve(static_cast<std::size_t>(initial) + 64);
    for (int i = initial - 1; i >= 0; --i) {
        const double pa = a + length * i / initial;
        const double pb = (i + 1 == initial) ? b : a + length * (i + 1) / initial;
        stack.push_back({pa, pb});
    }

    CompensatedSum total;
    double error = 0.0;
    int panels = initial;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const PanelResult r = integrate_panel(f, p.a, p.b);
        const double diff = std::abs(r.fine - r.coarse);
        const double local_tol = abs_tol * (p.b - p.a) / length;
        const double noise = 50.0 * kEps * r.abs_fine;
        if (diff <= std::max(local_tol, noise) || p.b - p.a <= 64.0 * kEps * std::abs(p.b)) {
            total += r.fine;
            error += std::min(diff, std::max(local_tol, noise));
            continue;
        }
        panels += 2;
        if (panels > panel_budget) throw ConvergenceError("quadrature: subdivision limit reached");
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({mid, p.b});
        stack.push_back({p.a, mid});
    }
    return {total.value(), error};
}

Estimate head_integral(const OscillatoryIntegrand& f, double T, const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0)) throw DomainError("quadrature: abs_tol must be positive");
    if (!(T >= 0.0)) throw DomainError("head_integral: cutoff must be non-negative");
    return adaptive_integral(f, 0.0, T, 0.5 * cfg.abs_tol, cfg.panel_budget);
}

std::vector<double> tail_lumps(const OscillatoryIntegrand& f, double T, int count) {
    const ZeroLadder zeros(f, f.phase(T));
    std::vector<double> lumps;
    lumps.reserve(static_cast<std::size_t>(std::max(count, 0)));
    double left = invert_phase(f, zeros.at(0), T);
    const QuadratureConfig cfg;
    for (int j = 0; j < count; ++j) {
        const double right = invert_phase(f, zeros.at(j + 1), left);
        lumps.push_back(adaptive_integral(f, left, right, lump_tolerance(cfg), cfg.panel_budget).value);
        left = right;
    }
    return lumps;
}

double aitken_accelerate(std::span<const double> partial_sums, int depth) {
    std::vector<double> s(partial_sums.begin(), partial_sums.end());
    if (s.empty()) return 0.0;
    for (int level = 0; level < depth && s.size() >= 3; ++level) {
        std::vector<double> next(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            const double d1 = s[i + 1] - s[i];
            const double d2 = s[i + 2] - s[i + 1];
            const double denom = d2 - d1;
            // A vanishing second difference means the column has converged.
            next[i] = (std::abs(denom) <= 4.0 * kEps * (std::abs(d1) + std::abs(d2)) || denom == 0.0)
                          ? s[i + 2]
                          : s[i + 2] - d2 * d2 / denom;
        }
        s = std::move(next);
    }
    return s.back();
}

Estimate tail_integral(const OscillatoryIntegrand& f, double T, const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0)) throw DomainError("quadrature: abs_tol must be positive");
    if (!(f.phase_derivative(T) > 0.0)) {
        throw DomainError("tail_integral: phase not increasing at the cutoff");
    }
    const ZeroLadder zeros(f, f.phase(T));
    const double lump_tol = lump_tolerance(cfg);

    double left = invert_phase(f, zeros.at(0), T);
    const Estimate lead = adaptive_integral(f, T, left, 0.25 * cfg.abs_tol, cfg.panel_budget);

    const double target = 0.25 * cfg.abs_tol;
    constexpr int kMinLumps = 7;
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(cfg.max_half_periods));
    CompensatedSum running;
    double last_lump = 0.0;
    double lump_error = 0.0;
    std::array<double, 3> recent{};
    int accelerated = 0;

    for (int j = 0; j < cfg.max_half_periods; ++j) {
        const double right = invert_phase(f, zeros.at(j + 1), left);
        const Estimate lump = adaptive_integral(f, left, right, lump_tol, cfg.panel_budget);
        left = right;
        running += lump.value;
        lump_error += lump.error;
        last_lump = lump.value;
        partial.push_back(running.value());

        if (partial.size() < 3) continue;
        recent[0] = recent[1];
        recent[1] = recent[2];
        recent[2] = aitken_accelerate(partial, cfg.acceleration_depth);
        ++accelerated;
        if (static_cast<int>(partial.size()) < kMinLumps || accelerated < 3) continue;
        const double d1 = std::abs(recent[2] - recent[1]);
        const double d2 = std::abs(recent[1] - recent[0]);
        if (d1 <= target && d2 <= target) {
            return {lead.value + recent[2], lead.error + lump_error + std::max(d1, d2)};
        }
    }

    // Acceleration stagnated: the limit of an alternating series with
    // decreasing terms lies between the last two partial sums.
    const std::size_t m = partial.size();
    if (m >= 2) {
        const double bracket = 0.5 * std::abs(last_lump);
        if (bracket <= 0.5 * cfg.abs_tol) {
            return {lead.value + 0.5 * (partial[m - 1] + partial[m - 2]), lead.error + lump_error + bracket};
        }
    }
    throw ConvergenceError("quadrature: oscillatory tail did not converge within " +
                           std::to_string(cfg.max_half_periods) + " half periods");
}

namespace {

Estimate integrate(const OscillatoryIntegrand& f, const QuadratureConfig& cfg) {
    const double T = cutoff(f);
    const Estimate head = head_integral(f, T, cfg);
    const Estimate tail = tail_integral(f, T, cfg);
    return {head.value + tail.value, head.error + tail.error};
}

}  // namespace

EvalResult v_pm_derivative(int n, Sign sign, double x, int k, const QuadratureConfig& cfg) {
    check_order(n, "v_pm");
    if (!(std::abs(x) <= kMaxAbsX)) {
        throw DomainError("v_pm: |x| must not exceed " + std::to_string(kMaxAbsX));
    }
    if (k < 0 || k >= n) throw DomainError("v_pm: derivative order outside [0, n-1]");
    const OscillatoryIntegrand f{n, sign, x, k, k};
    const Estimate e = integrate(f, cfg);
    if (!(e.error <= cfg.abs_tol)) {
        throw ConvergenceError("quadrature: estimated error " + describe(e.error) +
                               " exceeds tolerance");
    }
    const double sign_power = (sign == Sign::minus && k % 2 == 1) ? -1.0 : 1.0;
    return {sign_power * e.value / kPi, e.error / kPi, Method::quadrature};
}

EvalResult v_pm(int n, Sign sign, double x, const QuadratureConfig& cfg) {
    return v_pm_derivative(n, sign, x, 0, cfg);
}

double moment_integral(int n, int k) {
    check_order(n, "moment_integral");
    if (k < 0 || k >= n) throw DomainError("moment_integral: k outside [0, n-1]");
    const double np1 = n + 1.0;
    const double a = (k + 1) / np1;
    return std::pow(np1, a - 1.0) * specfun::gamma(a) * std::cos(a * kPi / 2.0 + k * kPi / 2.0);
}

Estimate moment_integral_numeric(int n, int k, const QuadratureConfig& cfg) {
    check_order(n, "moment_integral_numeric");
    if (k < 0 || k >= n) throw DomainError("moment_integral_numeric: k outside [0, n-1]");
    return integrate(OscillatoryIntegrand{n, Sign::plus, 0.0, k, k}, cfg);
}

}  // namespace genairy::quad
