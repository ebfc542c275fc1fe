#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace genairy::diffpoly {

// Largest order accepted by f_n().
inline constexpr int kMaxOrder = 20;

// Product of powers of jet variables y, y', y'', ...; exponents()[i] is the
// power of y^(i). Trailing zero exponents are trimmed, so the constant
// monomial has an empty exponent vector.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exponents);

    const std::vector<std::uint32_t>& exponents() const noexcept { return exponents_; }
    std::uint32_t exponent(std::size_t index) const noexcept {
        return index < exponents_.size() ? exponents_[index] : 0;
    }
    std::uint32_t degree() const noexcept;
    // Sum of e_i * (i + 1): y^(i) carries weight i + 1.
    std::uint32_t weight() const noexcept;
    // Index of the highest jet variable present, -1 for the constant.
    int max_index() const noexcept { return static_cast<int>(exponents_.size()) - 1; }

    // Copy with the exponent of y^(index) changed by delta (result must be >= 0).
    Monomial shifted(std::size_t index, int delta) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::uint32_t> exponents_;
};

// Graded order: total degree ascending, then exponent vectors compared
// lexicographically from y upward with the larger exponent first. Gives
// f_4 = y''' + 4*y*y'' + 3*y'^2 + 6*y^2*y' + y^4.
struct GradedOrder {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

// Sparse polynomial in the jet variables with exact integer coefficients.
// Zero coefficients are never stored.
class DiffPolynomial {
public:
    using Terms = std::map<Monomial, std::int64_t, GradedOrder>;

    DiffPolynomial() = default;

    // Adds coeff * m, merging with an existing term (throws std::overflow_error
    // on 64-bit overflow).
    void add_term(const Monomial& m, std::int64_t coeff);

    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    std::int64_t coefficient(const Monomial& m) const;
    int max_index() const noexcept;

    friend bool operator==(const DiffPolynomial&, const DiffPolynomial&) = default;

private:
    Terms terms_;
};

// Derivative values (g(x0), g'(x0), ..., g^(K)(x0)) of a function at x0.
struct Jet {
    std::vector<double> values;
    double basepoint = 0.0;

    std::size_t size() const noexcept { return values.size(); }
};

// The polynomial y.
DiffPolynomial f_one();

// (d/dx + y) p: total derivative by the Leibniz rule plus multiplication by y.
DiffPolynomial apply_lift(const DiffPolynomial& p);

// f_n = (d/dx + y)^(n-1) y for 1 <= n <= kMaxOrder.
DiffPolynomial f_n(int n);

// Plain evaluation; terms are summed in GradedOrder. Throws DomainError when
// the jet is shorter than 1 + p.max_index().
double evaluate(const DiffPolynomial& p, const Jet& jet);

// Jet of y = u'/u from the jet of u (one order shorter). Throws PoleError if
// u(x0) == 0 and DomainError for a jet of length < 2.
Jet log_derivative_jet(const Jet& u_jet);

// evaluate(f_n(n), log_derivative_jet(u_jet)) - u^(n)/u for u_jet of length n + 1.
double verify_cole_hopf(int n, const Jet& u_jet);

// Jet at x = 0 of exp(p(x)), p given by its coefficients p_0, p_1, ...,
// up to derivative `order`. Uses E' = p' E on the Taylor coefficients.
Jet exp_polynomial_jet(std::span<const double> poly, int order);

// Rendering like "y'' + 3*y*y' + y^3"; y^(k) for k >= 4 prints as y^{(k)}.
std::string to_string(const DiffPolynomial& p);

}  // namespace genairy::diffpoly
