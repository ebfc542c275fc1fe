#pragma once

#include "genairy/eval_result.hpp"

namespace genairy::asympt {

// Leading-order behaviour of the order n = 2m solution for large |x|.
// Error estimates are heuristic (size of the first neglected relative order).

// (2m/(2m+1)) (-x)^((2m+1)/(2m)); DomainError unless m >= 1 and x < 0.
double alpha(int m, double x);

// x >> 0: exp(-(2m/(2m+1)) x^((2m+1)/(2m))) / (sqrt(pi) sqrt(4m) x^((2m-1)/(4m))).
EvalResult asympt_pos(int m, double x);

// x << 0: (1/(sqrt(pi) sqrt(m) (-x)^((2m-1)/(4m)))) *
//   sum_{k<m} exp(alpha cos((1+2k)pi/(2m))) sin(alpha sin((1+2k)pi/(2m)) + (1+2k)pi/(4m)).
EvalResult asympt_neg(int m, double x);

// asympt_pos or asympt_neg by the sign of x (DomainError at x = 0).
EvalResult asympt_eval(int m, double x);

}  // namespace genairy::asympt
