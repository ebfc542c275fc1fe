#pragma once

namespace genairy::specfun {

// Gamma function on the open interval (0, 2). Relative error below 1e-13.
// Throws DomainError outside (0, 2).
double gamma(double p);

// Returns Gamma(p) * Gamma(1 - p) * sin(p * pi) / pi, which is 1 up to
// rounding for every p in (0, 1). Throws DomainError outside (0, 1).
double reflection_check(double p);

}  // namespace genairy::specfun
