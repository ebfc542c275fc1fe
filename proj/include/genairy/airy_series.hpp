#pragma once

#include <vector>

#include "genairy/diffpoly.hpp"
#include "genairy/eval_result.hpp"

namespace genairy::series {

inline constexpr int kMaxOrder = 20;
inline constexpr int kDefaultTruncation = 120;
inline constexpr double kDefaultTailTolerance = 1e-12;
// riccati_solution refuses when |u| < kPoleThreshold * sum_j |a_j x^j|.
inline constexpr double kPoleThreshold = 1e-8;

// +1 for n = 2 (mod 4), -1 for n = 0 (mod 4). DomainError for odd n or n < 2.
Sign sign_for(int n);

// Derivatives v^(k)(0), k = 0..n-1, of the integral solution
// (1/pi) int_0^inf cos(t^(n+1)/(n+1) + sign*x*t) dt.
struct InitialValues {
    int n = 2;
    Sign sign = Sign::plus;
    std::vector<double> v;
};

// Closed-form initial values for even n in [2, kMaxOrder].
InitialValues initial_values(int n, Sign sign);

// Maclaurin coefficients a_0..a_K of the solution of u^(n) = x u.
class TaylorModel {
public:
    TaylorModel(int n, std::vector<double> coefficients);

    int order() const noexcept { return n_; }
    int truncation() const noexcept { return static_cast<int>(a_.size()) - 1; }
    const std::vector<double>& coefficients() const noexcept { return a_; }
    double operator[](std::size_t j) const { return a_.at(j); }

    // Coefficient j for any j >= 0, continuing the recurrence past K.
    double coefficient(int j) const;

private:
    int n_;
    std::vector<double> a_;
};

// Coefficients from the seed: a_k = v_k/k! for k < n, a_n = 0 and
// a_(j+n) = a_(j-1) / ((j+1)(j+2)...(j+n)). The seed need not come from
// initial_values (any n values are accepted). DomainError if K < n.
TaylorModel taylor_coefficients(const InitialValues& iv, int truncation = kDefaultTruncation);

// taylor_coefficients(initial_values(n, sign_for(n)), kDefaultTruncation).
TaylorModel default_model(int n);

// Raw partial-sum data of the k-times differentiated series at x.
struct SeriesSum {
    double value = 0.0;
    double abs_sum = 0.0;        // sum of |term|
    double first_omitted = 0.0;  // |first nonzero term past the truncation|
    double tail_bound = 0.0;     // geometric majorant of the remainder
};

SeriesSum sum_series(const TaylorModel& tm, double x, int k);

// u(x) by compensated summation in ascending powers. error_estimate is
// |first omitted term| + eps * sum |a_j x^j|. RangeError when the tail
// majorant exceeds tail_tol.
EvalResult eval_series(const TaylorModel& tm, double x, double tail_tol = kDefaultTailTolerance);

// u^(k)(x) from the term-wise differentiated series, same policy.
EvalResult eval_derivative_series(const TaylorModel& tm, double x, int k,
                                  double tail_tol = kDefaultTailTolerance);

// (u(x), u'(x), ..., u^(order)(x)).
diffpoly::Jet u_jet(const TaylorModel& tm, double x, int order,
                    double tail_tol = kDefaultTailTolerance);

// y = u'/u for the default model of order n. PoleError near zeros of u.
EvalResult riccati_solution(int n, double x);

// f_n(y, y', ..., y^(n-1)) - x with the jet of y = u'/u taken from the
// series at x. PoleError near zeros of u.
double riccati_closure_residual(const TaylorModel& tm, double x);

}  // namespace genairy::series
