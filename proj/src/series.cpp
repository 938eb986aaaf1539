#include "h2inv/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace h2inv {

namespace {

void check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
}

void check_same_order(const TaylorSeries& f, const TaylorSeries& g) {
    if (f.order() != g.order())
        throw std::invalid_argument(
            "series order mismatch (" + std::to_string(f.order()) + " vs " +
            std::to_string(g.order()) + "); reconcile orders explicitly");
}

}  // namespace

TaylorSeries::TaylorSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
    for (const Complex& c : coeffs_) require_finite(c, "TaylorSeries");
}

TaylorSeries TaylorSeries::zero(int order) {
    check_order(order);
    return TaylorSeries(std::vector<Complex>(order + 1, Complex(0.0)));
}

TaylorSeries TaylorSeries::constant(Complex value, int order) {
    check_order(order);
    std::vector<Complex> c(order + 1, Complex(0.0));
    c[0] = value;
    return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::monomial(int n, int order) {
    check_order(order);
    if (n < 0 || n > order) throw std::invalid_argument("monomial degree out of range");
    std::vector<Complex> c(order + 1, Complex(0.0));
    c[n] = 1.0;
    return TaylorSeries(std::move(c));
}

Complex TaylorSeries::coeff(int n) const {
    if (n < 0 || n >= size()) throw std::out_of_range("coefficient index out of range");
    return coeffs_[n];
}

TaylorSeries TaylorSeries::truncated(int order) const {
    check_order(order);
    if (order >= this->order()) return extended(order);
    std::vector<Complex> c(coeffs_.begin(), coeffs_.begin() + order + 1);
    return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::extended(int order) const {
    check_order(order);
    if (order < this->order()) throw std::invalid_argument("extended() cannot shrink a series");
    std::vector<Complex> c(coeffs_);
    c.resize(order + 1, Complex(0.0));
    return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::shifted(int k) const {
    if (k < 0) throw std::invalid_argument("shift must be >= 0");
    std::vector<Complex> c(coeffs_.size(), Complex(0.0));
    for (int n = 0; n + k < size(); ++n) c[n + k] = coeffs_[n];
    return TaylorSeries(std::move(c));
}

double TaylorSeries::norm_squared() const {
    double s = 0.0;
    for (const Complex& c : coeffs_) s += std::norm(c);
    return s;
}

double TaylorSeries::norm() const { return std::sqrt(norm_squared()); }

Complex inner_product(const TaylorSeries& f, const TaylorSeries& g) {
    check_same_order(f, g);
    Complex s = 0.0;
    for (int n = 0; n < f.size(); ++n) s += f.coeffs()[n] * std::conj(g.coeffs()[n]);
    return s;
}

Complex eval(const TaylorSeries& f, Complex z) {
    require_finite(z, "eval");
    Complex acc = 0.0;
    for (int n = f.order(); n >= 0; --n) acc = acc * z + f.coeffs()[n];
    return acc;
}

TaylorSeries kernel(Complex w, int order) {
    require_finite(w, "kernel");
    if (std::abs(w) >= 1.0) throw std::domain_error("kernel point must satisfy |w| < 1");
    std::vector<Complex> c(order + 1);
    Complex wbar = std::conj(w);
    Complex p = 1.0;
    for (int n = 0; n <= order; ++n) {
        c[n] = p;
        p *= wbar;
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries add(const TaylorSeries& f, const TaylorSeries& g) {
    check_same_order(f, g);
    std::vector<Complex> c(f.coeffs());
    for (int n = 0; n < g.size(); ++n) c[n] += g.coeffs()[n];
    return TaylorSeries(std::move(c));
}

TaylorSeries subtract(const TaylorSeries& f, const TaylorSeries& g) {
    check_same_order(f, g);
    std::vector<Complex> c(f.coeffs());
    for (int n = 0; n < g.size(); ++n) c[n] -= g.coeffs()[n];
    return TaylorSeries(std::move(c));
}

TaylorSeries scale(Complex c, const TaylorSeries& f) {
    std::vector<Complex> out(f.coeffs());
    for (Complex& x : out) x *= c;
    return TaylorSeries(std::move(out));
}

TaylorSeries multiply(const TaylorSeries& f, const TaylorSeries& g) {
    check_same_order(f, g);
    const int n = f.size();
    std::vector<Complex> c(n, Complex(0.0));
    for (int i = 0; i < n; ++i) {
        const Complex fi = f.coeffs()[i];
        if (fi == Complex(0.0)) continue;
        for (int j = 0; i + j < n; ++j) c[i + j] += fi * g.coeffs()[j];
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries divide(const TaylorSeries& f, const TaylorSeries& g, double eps) {
    check_same_order(f, g);
    const Complex g0 = g.coeffs()[0];
    if (std::abs(g0) <= eps)
        throw std::domain_error("series division by near-singular denominator (|g0| <= eps)");
    const int n = f.size();
    std::vector<Complex> h(n, Complex(0.0));
    for (int k = 0; k < n; ++k) {
        Complex s = f.coeffs()[k];
        for (int j = 1; j <= k; ++j) s -= g.coeffs()[j] * h[k - j];
        h[k] = s / g0;
    }
    return TaylorSeries(std::move(h));
}

TaylorSeries exp_series(const TaylorSeries& f) {
    const int n = f.size();
    std::vector<Complex> h(n, Complex(0.0));
    h[0] = std::exp(f.coeffs()[0]);
    for (int k = 1; k < n; ++k) {
        Complex s = 0.0;
        for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * f.coeffs()[j] * h[k - j];
        h[k] = s / static_cast<double>(k);
    }
    return TaylorSeries(std::move(h));
}

}  // namespace h2inv
