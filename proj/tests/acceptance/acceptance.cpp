// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "genairy/airy_asympt.hpp"
#include "genairy/airy_quad.hpp"
#include "genairy/airy_series.hpp"
#include "genairy/cli.hpp"
#include "genairy/diffpoly.hpp"
#include "genairy/errors.hpp"

#ifndef GENAIRY_CLI_PATH
#error "GENAIRY_CLI_PATH must name the genairy executable"
#endif

using namespace genairy;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v) { return cli::format_double(v); }

// 30-digit reference values computed with an arbitrary-precision library.
constexpr double kV0 = 0.355028053887817239260063186004;
constexpr double kV1 = -0.258819403792806798405183560189;
constexpr std::array<double, 4> kAiPos = {9.9476943602528895702e-6, 4.6922076160992316256e-8,
                                          1.1047532552898685934e-10, 1.393184688875360839e-13};
constexpr std::array<double, 4> kAiNeg = {-0.070265532949289515099, -0.32914517362982310523,
                                          -0.052705050356386202622, 0.040241238486443190689};

Verdict criterion1() {
    const auto iv = series::initial_values(2, Sign::plus);
    const double e0 = std::abs(iv.v[0] - kV0) / std::abs(kV0);
    const double e1 = std::abs(iv.v[1] - kV1) / std::abs(kV1);
    const double worst = std::max(e0, e1);
    return {worst <= 1e-10, "v0=" + fmt(iv.v[0]) + " v1=" + fmt(iv.v[1]) + " max_rel_err=" + fmt(worst)};
}

Verdict criterion2() {
    const std::string f2 = diffpoly::to_string(diffpoly::f_n(2));
    const std::string f3 = diffpoly::to_string(diffpoly::f_n(3));
    const std::string f4 = diffpoly::to_string(diffpoly::f_n(4));
    const bool ok = f2 == "y' + y^2" && f3 == "y'' + 3*y*y' + y^3" &&
                    f4 == "y''' + 4*y*y'' + 3*y'^2 + 6*y^2*y' + y^4";
    return {ok, "f_2=\"" + f2 + "\" f_3=\"" + f3 + "\" f_4=\"" + f4 + "\""};
}

Verdict criterion3() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> degree(1, 5);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> p(static_cast<std::size_t>(degree(rng)) + 1);
        for (double& c : p) c = coeff(rng);
        for (int n = 2; n <= 8; ++n) {
            const diffpoly::Jet u = diffpoly::exp_polynomial_jet(p, n);
            const double ratio = u.values[static_cast<std::size_t>(n)] / u.values[0];
            const double scaled = std::abs(diffpoly::verify_cole_hopf(n, u)) / (1.0 + std::abs(ratio));
            worst = std::max(worst, scaled);
        }
    }
    return {worst <= 1e-10, "700 cases, max scaled residual=" + fmt(worst)};
}

Verdict criterion4() {
    double worst = 0.0;
    for (int n : {2, 4, 6, 8}) {
        const auto tm = series::default_model(n);
        for (double x : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
            const double u = series::eval_series(tm, x).value;
            const double un = series::eval_derivative_series(tm, x, n).value;
            worst = std::max(worst, std::abs(un - x * u) / (1.0 + std::abs(x * u)));
        }
    }
    return {worst <= 1e-9, "20 points, max scaled residual=" + fmt(worst)};
}

Verdict criterion5() {
    bool ok = true;
    std::ostringstream detail;
    for (int n : {2, 4, 6}) {
        const auto tm = series::default_model(n);
        const double tol = n == 2 ? 1e-8 : 1e-6;
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double x = -5.0 + 0.5 * i;
            const double s = series::eval_series(tm, x).value;
            const double q = quad::v_pm(n, series::sign_for(n), x).value;
            worst = std::max(worst, std::abs(s - q));
        }
        ok = ok && worst <= tol;
        detail << "n=" << n << " max=" << fmt(worst) << " ";
    }
    return {ok, detail.str()};
}

Verdict criterion6() {
    double worst = 0.0;
    for (int n : {2, 4, 6}) {
        const auto tm = series::default_model(n);
        for (double x : {-1.0, 0.5, 2.0}) {
            worst = std::max(worst, std::abs(series::riccati_closure_residual(tm, x)));
        }
    }
    return {worst <= 1e-7, "9 points, max |f_n - x|=" + fmt(worst)};
}

Verdict criterion7() {
    double worst = 0.0;
    for (int n : {2, 4, 6}) {
        for (int k = 0; k < n; ++k) {
            const double numeric = quad::moment_integral_numeric(n, k).value;
            worst = std::max(worst, std::abs(numeric - quad::moment_integral(n, k)));
        }
    }
    return {worst <= 1e-7, "12 moments, max abs err=" + fmt(worst)};
}

struct Run {
    int status;
    std::string out;
};

Run shell(const std::string& args) {
    const std::string cmd = std::string("\"") + GENAIRY_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

// Numeric columns of every data row (all but the header and banner lines).
bool table_is_finite(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    int rows = 0;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.rfind("REPORT-ONLY", 0) == 0) continue;
        std::istringstream cells(line);
        std::string cell;
        for (int col = 0; std::getline(cells, cell, ','); ++col) {
            if (col == 3) continue;
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0' || !std::isfinite(v)) return false;
        }
        ++rows;
    }
    return rows > 0;
}

Verdict criterion8() {
    bool ok = true;
    std::ostringstream detail;
    std::array<double, 4> rel{};
    const std::array<double, 4> xs = {6.0, 8.0, 10.0, 12.0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        rel[i] = std::abs(asympt::asympt_pos(1, xs[i]).value - kAiPos[i]) / kAiPos[i];
    }
    ok = ok && rel[0] <= 0.01;
    for (std::size_t i = 1; i < rel.size(); ++i) ok = ok && rel[i] < rel[i - 1];
    detail << "pos rel=" << fmt(rel[0]) << ".." << fmt(rel[3]);

    // Deviation relative to the largest reference magnitude on the grid.
    double amplitude = 0.0;
    for (double a : kAiNeg) amplitude = std::max(amplitude, std::abs(a));
    double worst = 0.0;
    const std::array<double, 4> xn = {-4.0, -6.0, -8.0, -10.0};
    for (std::size_t i = 0; i < xn.size(); ++i) {
        worst = std::max(worst, std::abs(asympt::asympt_neg(1, xn[i]).value - kAiNeg[i]) / amplitude);
    }
    ok = ok && worst <= 0.05;
    detail << " neg amplitude_dev=" << fmt(worst);

    const Run pos = shell("asympt-compare --m 1 --side pos --x-min 6 --x-max 12 --points 4");
    const Run neg = shell("asympt-compare --m 1 --side neg --x-min -10 --x-max -4 --points 4");
    ok = ok && pos.status == 0 && neg.status == 0;
    for (int m : {2, 3}) {
        for (const char* side : {"pos", "neg"}) {
            const Run r = shell("asympt-compare --m " + std::to_string(m) + " --side " + side);
            const bool banner = r.out.find("REPORT-ONLY") != std::string::npos;
            const bool finite = table_is_finite(r.out);
            ok = ok && r.status == 0 && banner && finite;
        }
    }
    detail << " cli_m1=" << pos.status << "/" << neg.status << " m>=2 report-only";
    return {ok, detail.str()};
}

Verdict criterion9() {
    bool ok = true;
    std::ostringstream detail;
    const std::vector<std::string> commands = {
        "eval --n 4 --x -2.5 --method auto",
        "eval --n 2 --x 1.25 --method quad --ref series --format json",
        "table --n 6 --x-min -4 --x-max 4 --steps 32 --threads 4",
        "fn-poly --n 7 --format json",
        "verify --n 4",
        "asympt-compare --m 2 --side neg",
    };
    int identical = 0;
    for (const auto& c : commands) {
        const Run a = shell(c);
        const Run b = shell(c);
        if (a.status == 0 && !a.out.empty() && a.out == b.out) ++identical;
    }
    ok = ok && identical == static_cast<int>(commands.size());
    detail << "repeatable=" << identical << "/" << commands.size();

    const std::array<std::pair<const char*, int>, 4> codes = {{
        {"eval --n 2 --x 0", 0},
        {"verify --n 2 --tol 1e-30", 1},
        {"eval --n 3 --x 0", 2},
        {"eval --n 2 --x 40 --method series", 3},
    }};
    for (const auto& [args, expected] : codes) {
        const int got = shell(args).status;
        ok = ok && got == expected;
        detail << " exit(" << expected << ")=" << got;
    }

    std::mt19937_64 rng(9);
    int exact = 0;
    int total = 0;
    while (total < 1000) {
        const std::uint64_t bits = rng();
        double v = 0.0;
        std::memcpy(&v, &bits, sizeof v);
        if (!std::isfinite(v)) continue;
        ++total;
        const std::string s = fmt(v);
        if (std::strtod(s.c_str(), nullptr) == v && s.size() <= 24) ++exact;
    }
    ok = ok && exact == total;
    detail << " round_trip=" << exact << "/" << total;
    return {ok, detail.str()};
}

}  // namespace

int main() {
    const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3,
                                                            criterion4, criterion5, criterion6,
                                                            criterion7, criterion8, criterion9};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!v.pass) ++failures;
        std::printf("%s criterion %zu: %s (%.3fs)\n", v.pass ? "PASS" : "FAIL", i + 1, v.detail.c_str(), secs);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
