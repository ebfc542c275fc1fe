#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "genairy/airy_quad.hpp"
#include "genairy/errors.hpp"

using namespace genairy;
using namespace genairy::quad;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAi0 = 0.355028053887817239260063186004;
constexpr double kAi1 = 0.135292416312881415524147423515;
// int_0^1 cos(t^3/3) dt, 30-digit reference
constexpr double kHeadUnit = 0.992102961425015461337119476879;

// Midpoint rule on a fine grid: independent of the adaptive panels.
double midpoint(const OscillatoryIntegrand& f, double a, double b, int cells) {
    const double h = (b - a) / cells;
    double sum = 0.0;
    for (int i = 0; i < cells; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

}  // namespace

TEST_CASE("integrand and phase") {
    const OscillatoryIntegrand f{2, Sign::plus, 1.5, 0, 0};
    CHECK(f.phase(2.0) == doctest::Approx(8.0 / 3.0 + 3.0));
    CHECK(f.phase_derivative(2.0) == doctest::Approx(5.5));
    CHECK(f(2.0) == doctest::Approx(std::cos(8.0 / 3.0 + 3.0)).epsilon(1e-15));
    const OscillatoryIntegrand g{2, Sign::minus, 1.5, 1, 1};
    CHECK(g(2.0) == doctest::Approx(-2.0 * std::sin(8.0 / 3.0 - 3.0)).epsilon(1e-14));
    CHECK(f.at(2.0, 1e-3) == doctest::Approx(f(2.001)).epsilon(1e-12));
}

TEST_CASE("cutoff lies past the stationary point") {
    for (double x : {-20.0, -5.0, -1.0, 0.0, 1.0, 20.0}) {
        for (int n : {2, 4, 6}) {
            for (Sign s : {Sign::plus, Sign::minus}) {
                const OscillatoryIntegrand f{n, s, x, 0, 0};
                const double T = cutoff(f);
                CHECK(T >= 1.0);
                CHECK(f.phase_derivative(T) > 0.0);
            }
        }
    }
}

TEST_CASE("head integral") {
    const OscillatoryIntegrand f{2, Sign::plus, 0.0, 0, 0};
    const QuadratureConfig cfg;
    CHECK(std::abs(head_integral(f, 1e-12, cfg).value) <= 2e-12);
    CHECK(head_integral(f, 0.0, cfg).value == 0.0);
    const Estimate e = head_integral(f, 1.0, cfg);
    CHECK(e.value == doctest::Approx(kHeadUnit).epsilon(1e-13));
    CHECK(std::abs(e.value - midpoint(f, 0.0, 1.0, 20000)) < 1e-8);
    const OscillatoryIntegrand g{4, Sign::minus, 3.0, 0, 0};
    CHECK(std::abs(head_integral(g, 3.0, cfg).value) <= 3.0);
    CHECK(std::abs(head_integral(g, 3.0, cfg).value - midpoint(g, 0.0, 3.0, 200000)) < 1e-8);
}

TEST_CASE("subdivision limit") {
    const OscillatoryIntegrand f{2, Sign::plus, 0.0, 0, 0};
    QuadratureConfig cfg;
    cfg.panel_budget = 3;
    CHECK_THROWS_AS(head_integral(f, 10.0, cfg), ConvergenceError);
}

TEST_CASE("tail lumps alternate and shrink") {
    const OscillatoryIntegrand f{2, Sign::plus, 0.0, 0, 0};
    const std::vector<double> lumps = tail_lumps(f, 2.0, 40);
    for (std::size_t i = 1; i < lumps.size(); ++i) {
        CHECK(lumps[i] * lumps[i - 1] < 0.0);
        CHECK(std::abs(lumps[i]) < std::abs(lumps[i - 1]));
    }
}

TEST_CASE("accelerated estimate stays within the last bracket") {
    const OscillatoryIntegrand f{2, Sign::plus, 0.0, 0, 0};
    const std::vector<double> lumps = tail_lumps(f, 2.0, 15);
    std::vector<double> partial;
    double s = 0.0;
    for (double l : lumps) partial.push_back(s += l);
    const double a = aitken_accelerate(partial, 12);
    const double lo = std::min(partial[13], partial[14]);
    const double hi = std::max(partial[13], partial[14]);
    CHECK(a >= lo);
    CHECK(a <= hi);
    // exact on a geometric series
    std::vector<double> geometric;
    double g = 0.0;
    for (int i = 0; i < 5; ++i) geometric.push_back(g += std::pow(-0.5, i));
    CHECK(aitken_accelerate(geometric, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("head + tail reproduce the closed form at x = 0") {
    const OscillatoryIntegrand f{2, Sign::plus, 0.0, 0, 0};
    const QuadratureConfig cfg;
    const double total = head_integral(f, 2.0, cfg).value + tail_integral(f, 2.0, cfg).value;
    CHECK(std::abs(total - kAi0 * kPi) <= 1e-9 * kPi);
}

TEST_CASE("v_pm values") {
    CHECK(v_pm(2, Sign::plus, 0.0).value == doctest::Approx(kAi0).epsilon(1e-10));
    CHECK(v_pm(2, Sign::plus, 1.0).value == doctest::Approx(kAi1).epsilon(1e-9));
    const EvalResult r = v_pm(4, Sign::minus, 0.0);
    CHECK(r.method == Method::quadrature);
    CHECK(r.value == doctest::Approx(0.38350670167783941191).epsilon(1e-10));
    CHECK(r.error_estimate <= 1e-10);
    CHECK_THROWS_AS(v_pm(2, Sign::plus, 20.5), DomainError);
    CHECK_THROWS_AS(v_pm(1, Sign::plus, 0.0), DomainError);
}

TEST_CASE("non-convergence is reported") {
    QuadratureConfig cfg;
    cfg.max_half_periods = 4;
    CHECK_THROWS_AS(v_pm(2, Sign::plus, 0.0, cfg), ConvergenceError);
}

TEST_CASE("cutoff independence") {
    const OscillatoryIntegrand f{2, Sign::plus, 1.0, 0, 0};
    const QuadratureConfig cfg;
    const double T = cutoff(f);
    const double a = head_integral(f, T, cfg).value + tail_integral(f, T, cfg).value;
    const double b = head_integral(f, 2 * T, cfg).value + tail_integral(f, 2 * T, cfg).value;
    CHECK(std::abs(a - b) <= 2 * cfg.abs_tol);
}

TEST_CASE("moment identity") {
    CHECK(moment_integral(2, 0) ==
          doctest::Approx(std::pow(3.0, -2.0 / 3.0) * 2.678938534707747633 * std::cos(kPi / 6)).epsilon(1e-14));
    CHECK(moment_integral(2, 0) == doctest::Approx(1.11535352591224787071374325977).epsilon(1e-13));
    CHECK(kPi * v_pm(2, Sign::plus, 0.0).value == doctest::Approx(moment_integral(2, 0)).epsilon(1e-10));
    for (int n : {2, 4, 6}) {
        for (int k = 0; k < n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(std::abs(moment_integral_numeric(n, k).value - moment_integral(n, k)) <= 1e-7);
        }
    }
    CHECK_THROWS_AS(moment_integral(2, 2), DomainError);
    CHECK_THROWS_AS(moment_integral(2, -1), DomainError);
}

TEST_CASE("derivative under the integral") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    const double h = 1e-4;
    for (int n : {2, 4}) {
        const Sign s = n == 2 ? Sign::plus : Sign::minus;
        for (double x : {-2.0, 0.5, 3.0}) {
            const double fd = (v_pm(n, s, x + h, cfg).value - v_pm(n, s, x - h, cfg).value) / (2 * h);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(std::abs(fd - v_pm_derivative(n, s, x, 1, cfg).value) <= 1e-5);
        }
    }
}

TEST_CASE("exponentially small values keep relative accuracy") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-15;
    // Ai(10), Ai(12)
    CHECK(v_pm(2, Sign::plus, 10.0, cfg).value == doctest::Approx(1.1047532552898685933550205658e-10).epsilon(1e-5));
    CHECK(v_pm(2, Sign::plus, 12.0, cfg).value == doctest::Approx(1.3931846888753608390490345032e-13).epsilon(2e-4));
}
