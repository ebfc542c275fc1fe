#include "genairy/airy_series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "genairy/errors.hpp"
#include "genairy/specfun.hpp"
#include "genairy/summation.hpp"

namespace genairy::series {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_even_order(int n, const char* where) {
    if (n % 2 != 0) throw DomainError(std::string(where) + ": odd order unsupported");
    if (n < 2 || n > kMaxOrder) {
        throw DomainError(std::string(where) + ": order " + std::to_string(n) + " outside [2, " +
                          std::to_string(kMaxOrder) + "]");
    }
}

// j * (j-1) * ... * (j-k+1)
double falling_factorial(int j, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= static_cast<double>(j - i);
    return out;
}

}  // namespace

Sign sign_for(int n) {
    if (n % 2 != 0) throw DomainError("sign_for: odd order unsupported");
    if (n < 2) throw DomainError("sign_for: order must be >= 2");
    return n % 4 == 2 ? Sign::plus : Sign::minus;
}

InitialValues initial_values(int n, Sign sign) {
    check_even_order(n, "initial_values");
    constexpr double pi = std::numbers::pi;
    const double np1 = n + 1.0;
    InitialValues iv{n, sign, std::vector<double>(static_cast<std::size_t>(n))};
    double sign_power = 1.0;
    for (int k = 0; k < n; ++k) {
        const double p = (n - k) / np1;
        const double trig =
            std::cos((k + 1) * pi / (2.0 * np1) + k * pi / 2.0) / std::sin((k + 1) * pi / np1);
        iv.v[k] = sign_power * trig / (std::pow(np1, p) * specfun::gamma(p));
        sign_power *= to_double(sign);
    }
    return iv;
}

TaylorModel::TaylorModel(int n, std::vector<double> coefficients)
    : n_(n), a_(std::move(coefficients)) {
    if (n_ < 1) throw DomainError("TaylorModel: order must be >= 1");
    if (a_.size() < static_cast<std::size_t>(n_) + 1) {
        throw DomainError("TaylorModel: need at least n + 1 coefficients");
    }
}

double TaylorModel::coefficient(int j) const {
    if (j < 0) return 0.0;
    if (j < static_cast<int>(a_.size())) return a_[static_cast<std::size_t>(j)];
    // a_m = a_(m-n-1) / ((m-n+1)...(m)), evaluated recursively past K.
    const int base = j - n_;
    double denom = 1.0;
    for (int i = 1; i <= n_; ++i) denom *= static_cast<double>(base + i);
    return coefficient(base - 1) / denom;
}

TaylorModel taylor_coefficients(const InitialValues& iv, int truncation) {
    const int n = iv.n;
    if (n < 1) throw DomainError("taylor_coefficients: order must be >= 1");
    if (iv.v.size() != static_cast<std::size_t>(n)) {
        throw DomainError("taylor_coefficients: seed must hold exactly n values");
    }
    if (truncation < n) throw DomainError("taylor_coefficients: truncation K must be >= n");

    std::vector<double> a(static_cast<std::size_t>(truncation) + 1, 0.0);
    double factorial = 1.0;
    for (int k = 0; k < n; ++k) {
        if (k > 0) factorial *= k;
        a[k] = iv.v[k] / factorial;
    }
    a[n] = 0.0;
    for (int j = 1; j + n <= truncation; ++j) {
        double denom = 1.0;
        for (int i = 1; i <= n; ++i) denom *= static_cast<double>(j + i);
        a[j + n] = a[j - 1] / denom;
    }
    return TaylorModel(n, std::move(a));
}

TaylorModel default_model(int n) {
    return taylor_coefficients(initial_values(n, sign_for(n)), kDefaultTruncation);
}

SeriesSum sum_series(const TaylorModel& tm, double x, int k) {
    const int K = tm.truncation();
    const int n = tm.order();
    if (k < 0 || k > K) throw DomainError("sum_series: derivative order outside [0, K]");

    std::vector<double> magnitudes;
    magnitudes.reserve(static_cast<std::size_t>(K - k) + 1);
    CompensatedSum sum;
    double abs_sum = 0.0;
    double power = 1.0;
    for (int j = k; j <= K; ++j) {
        const double term = tm[j] * falling_factorial(j, k) * power;
        sum += term;
        abs_sum += std::abs(term);
        magnitudes.push_back(std::abs(term));
        power *= x;
    }

    SeriesSum out;
    out.value = sum.value();
    out.abs_sum = abs_sum;

    for (int j = K + 1; j <= K + n + 1; ++j) {
        const double c = tm.coefficient(j);
        if (c != 0.0) {
            out.first_omitted = std::abs(c * falling_factorial(j, k) * std::pow(x, j - k));
            break;
        }
    }

    // Geometric majorant from the ratio of the last two blocks of n+1 terms.
    const std::size_t block = static_cast<std::size_t>(n) + 1;
    if (magnitudes.size() >= 2 * block) {
        double last = 0.0;
        double prev = 0.0;
        const std::size_t m = magnitudes.size();
        for (std::size_t i = 0; i < block; ++i) {
            last += magnitudes[m - 1 - i];
            prev += magnitudes[m - 1 - block - i];
        }
        if (last == 0.0) {
            out.tail_bound = 0.0;
        } else if (prev == 0.0) {
            out.tail_bound = std::numeric_limits<double>::infinity();
        } else {
            const double ratio = last / prev;
            out.tail_bound = ratio < 1.0 ? last * ratio / (1.0 - ratio)
                                         : std::numeric_limits<double>::infinity();
        }
    } else {
        out.tail_bound = out.first_omitted;
    }
    return out;
}

EvalResult eval_derivative_series(const TaylorModel& tm, double x, int k, double tail_tol) {
    const SeriesSum s = sum_series(tm, x, k);
    if (!(s.tail_bound <= tail_tol)) {
        throw RangeError("series: truncation tail " + describe(s.tail_bound) + " at x = " +
                         describe(x) + " exceeds tolerance");
    }
    return {s.value, s.first_omitted + kEps * s.abs_sum, Method::series};
}

EvalResult eval_series(const TaylorModel& tm, double x, double tail_tol) {
    return eval_derivative_series(tm, x, 0, tail_tol);
}

diffpoly::Jet u_jet(const TaylorModel& tm, double x, int order, double tail_tol) {
    diffpoly::Jet jet{std::vector<double>(static_cast<std::size_t>(order) + 1), x};
    for (int k = 0; k <= order; ++k) jet.values[k] = eval_derivative_series(tm, x, k, tail_tol).value;
    return jet;
}

namespace {

void check_pole(double x, const SeriesSum& u) {
    if (std::abs(u.value) < kPoleThreshold * u.abs_sum) {
        throw PoleError("riccati: u(" + describe(x) + ") vanishes to working accuracy");
    }
}

}  // namespace

EvalResult riccati_solution(int n, double x) {
    const TaylorModel tm = default_model(n);
    const SeriesSum s = sum_series(tm, x, 0);
    check_pole(x, s);
    const EvalResult u = eval_series(tm, x);
    const EvalResult du = eval_derivative_series(tm, x, 1);
    const double y = du.value / u.value;
    const double err = (du.error_estimate + std::abs(y) * u.error_estimate) / std::abs(u.value);
    return {y, err, Method::series};
}

double riccati_closure_residual(const TaylorModel& tm, double x) {
    const int n = tm.order();
    check_pole(x, sum_series(tm, x, 0));
    const diffpoly::Jet y = diffpoly::log_derivative_jet(u_jet(tm, x, n));
    return diffpoly::evaluate(diffpoly::f_n(n), y) - x;
}

}  // namespace genairy::series
