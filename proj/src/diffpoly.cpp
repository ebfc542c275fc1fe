#include "genairy/diffpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "genairy/errors.hpp"

namespace genairy::diffpoly {

namespace {

void trim(std::vector<std::uint32_t>& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("diffpoly: coefficient overflow");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("diffpoly: coefficient overflow");
    return out;
}

std::string variable_name(std::size_t index) {
    switch (index) {
        case 0: return "y";
        case 1: return "y'";
        case 2: return "y''";
        case 3: return "y'''";
        default: return "y^{(" + std::to_string(index) + ")}";
    }
}

}  // namespace

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {
    trim(exponents_);
}

std::uint32_t Monomial::degree() const noexcept {
    return std::accumulate(exponents_.begin(), exponents_.end(), std::uint32_t{0});
}

std::uint32_t Monomial::weight() const noexcept {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        w += exponents_[i] * static_cast<std::uint32_t>(i + 1);
    }
    return w;
}

Monomial Monomial::shifted(std::size_t index, int delta) const {
    std::vector<std::uint32_t> e = exponents_;
    if (e.size() <= index) e.resize(index + 1, 0);
    const auto updated = static_cast<std::int64_t>(e[index]) + delta;
    if (updated < 0) throw std::logic_error("Monomial::shifted: negative exponent");
    e[index] = static_cast<std::uint32_t>(updated);
    return Monomial(std::move(e));
}

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const noexcept {
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) return da < db;
    const std::size_t len = std::max(a.exponents().size(), b.exponents().size());
    for (std::size_t i = 0; i < len; ++i) {
        const auto ea = a.exponent(i);
        const auto eb = b.exponent(i);
        if (ea != eb) return ea > eb;
    }
    return false;
}

void DiffPolynomial::add_term(const Monomial& m, std::int64_t coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (inserted) return;
    it->second = checked_add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
}

std::int64_t DiffPolynomial::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

int DiffPolynomial::max_index() const noexcept {
    int out = -1;
    for (const auto& [m, c] : terms_) out = std::max(out, m.max_index());
    return out;
}

DiffPolynomial f_one() {
    DiffPolynomial p;
    p.add_term(Monomial({1}), 1);
    return p;
}

DiffPolynomial apply_lift(const DiffPolynomial& p) {
    DiffPolynomial out;
    for (const auto& [m, c] : p.terms()) {
        // d/dx: y^(i)^e -> e * y^(i)^(e-1) * y^(i+1)
        const auto& e = m.exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out.add_term(m.shifted(i, -1).shifted(i + 1, 1), checked_mul(c, e[i]));
        }
        out.add_term(m.shifted(0, 1), c);
    }
    return out;
}

DiffPolynomial f_n(int n) {
    if (n < 1 || n > kMaxOrder) {
        throw DomainError("f_n: order " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxOrder) + "]");
    }
    DiffPolynomial p = f_one();
    for (int i = 1; i < n; ++i) p = apply_lift(p);
    return p;
}

double evaluate(const DiffPolynomial& p, const Jet& jet) {
    const int need = p.max_index() + 1;
    if (static_cast<int>(jet.size()) < need) {
        throw DomainError("evaluate: jet of length " + std::to_string(jet.size()) +
                          " but polynomial uses " + std::to_string(need) + " jet variables");
    }
    double sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double term = static_cast<double>(c);
        const auto& e = m.exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::uint32_t k = 0; k < e[i]; ++k) term *= jet.values[i];
        }
        sum += term;
    }
    return sum;
}

Jet log_derivative_jet(const Jet& u_jet) {
    const std::size_t len = u_jet.size();
    if (len < 2) throw DomainError("log_derivative_jet: need a jet of length >= 2");
    if (u_jet.values[0] == 0.0) throw PoleError("log_derivative_jet: u(x0) = 0");

    // Taylor coefficients c_k = u^(k)/k!, then u' = y u solved for the
    // coefficients b_k of y term by term.
    std::vector<double> c(len);
    double factorial = 1.0;
    for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) factorial *= static_cast<double>(k);
        c[k] = u_jet.values[k] / factorial;
    }
    const std::size_t out_len = len - 1;
    std::vector<double> b(out_len);
    for (std::size_t k = 0; k < out_len; ++k) {
        double acc = static_cast<double>(k + 1) * c[k + 1];
        for (std::size_t j = 0; j < k; ++j) acc -= b[j] * c[k - j];
        b[k] = acc / c[0];
    }

    Jet y{std::vector<double>(out_len), u_jet.basepoint};
    factorial = 1.0;
    for (std::size_t k = 0; k < out_len; ++k) {
        if (k > 0) factorial *= static_cast<double>(k);
        y.values[k] = b[k] * factorial;
    }
    return y;
}

double verify_cole_hopf(int n, const Jet& u_jet) {
    if (n < 1) throw DomainError("verify_cole_hopf: order must be >= 1");
    if (u_jet.size() != static_cast<std::size_t>(n) + 1) {
        throw DomainError("verify_cole_hopf: expected a jet of length " + std::to_string(n + 1));
    }
    const Jet y = log_derivative_jet(u_jet);
    return evaluate(f_n(n), y) - u_jet.values[n] / u_jet.values[0];
}

Jet exp_polynomial_jet(std::span<const double> poly, int order) {
    if (order < 0) throw DomainError("exp_polynomial_jet: order must be >= 0");
    const auto len = static_cast<std::size_t>(order) + 1;
    std::vector<double> e(len);
    e[0] = std::exp(poly.empty() ? 0.0 : poly[0]);
    for (std::size_t k = 1; k < len; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k && j < poly.size(); ++j) {
            acc += static_cast<double>(j) * poly[j] * e[k - j];
        }
        e[k] = acc / static_cast<double>(k);
    }
    Jet jet{std::vector<double>(len), 0.0};
    double factorial = 1.0;
    for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) factorial *= static_cast<double>(k);
        jet.values[k] = e[k] * factorial;
    }
    return jet;
}

std::string to_string(const DiffPolynomial& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::int64_t mag = c;
        if (first) {
            if (c < 0) {
                out += "-";
                mag = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) mag = -c;
        }
        first = false;

        std::vector<std::string> factors;
        const auto& e = m.exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            std::string f = variable_name(i);
            if (e[i] > 1) f += "^" + std::to_string(e[i]);
            factors.push_back(std::move(f));
        }
        if (mag != 1 || factors.empty()) factors.insert(factors.begin(), std::to_string(mag));
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0) out += "*";
            out += factors[i];
        }
    }
    return out;
}

}  // namespace genairy::diffpoly
