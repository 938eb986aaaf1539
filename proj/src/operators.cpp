#include "h2inv/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace h2inv {

namespace {

void check_a(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("symbol parameter a must lie strictly in (0,1)");
}

void check_order(int order) {
    if (order < 0) throw std::invalid_argument("matrix order must be >= 0");
}

}  // namespace

TaylorSeries OperatorMatrix::apply(const TaylorSeries& f) const {
    if (f.order() != order())
        throw std::invalid_argument("operator/series order mismatch");
    Eigen::VectorXcd v(f.size());
    for (int n = 0; n < f.size(); ++n) v(n) = f.coeffs()[n];
    Eigen::VectorXcd w = entries * v;
    std::vector<Complex> out(f.size());
    for (int n = 0; n < f.size(); ++n) out[n] = w(n);
    return TaylorSeries(std::move(out));
}

SymbolMap SymbolMap::affine(double a) {
    check_a(a);
    return SymbolMap(Kind::affine, a);
}

SymbolMap SymbolMap::moebius_sigma(double a) {
    check_a(a);
    return SymbolMap(Kind::moebius_sigma, a);
}

SymbolMap SymbolMap::general(TaylorSeries series) {
    // sup-grid self-map validation on |z| = 0.999
    const int M = 1024;
    for (int j = 0; j < M; ++j) {
        const Complex z = std::polar(0.999, 2.0 * std::numbers::pi * j / M);
        if (std::abs(h2inv::eval(series, z)) > 1.0 + 1e-9)
            throw std::invalid_argument("general symbol exceeds the unit bound on |z| = 0.999");
    }
    SymbolMap s(Kind::general, 0.0);
    s.series_ = std::move(series);
    return s;
}

const TaylorSeries& SymbolMap::series() const {
    if (!series_) throw std::logic_error("symbol has no explicit series");
    return *series_;
}

Complex SymbolMap::eval(Complex z) const {
    switch (kind_) {
        case Kind::affine:
            return a_ * z + (1.0 - a_);
        case Kind::moebius_sigma:
            return a_ * z / (1.0 - (1.0 - a_) * z);
        case Kind::general:
            return h2inv::eval(*series_, z);
    }
    throw std::logic_error("unreachable");
}

std::string SymbolMap::describe() const {
    switch (kind_) {
        case Kind::affine:
            return "phi_a=" + std::to_string(a_);
        case Kind::moebius_sigma:
            return "sigma_a=" + std::to_string(a_);
        case Kind::general:
            return "general";
    }
    return "?";
}

SymbolMap semigroup_member(double t) {
    if (!(t > 0.0)) throw std::domain_error("semigroup parameter t must be positive");
    return SymbolMap::affine(std::exp(-t));
}

OperatorMatrix affine_matrix(double a, int order) {
    check_a(a);
    check_order(order);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order + 1, order + 1);
    const long double la = a;
    const long double ratio = la / (1.0L - la);
    for (int n = 0; n <= order; ++n) {
        // column n: terms of the binomial expansion of (az + 1-a)^n
        long double t = std::pow(1.0L - la, static_cast<long double>(n));
        for (int k = 0; k <= n; ++k) {
            m(k, n) = static_cast<double>(t);
            t *= ratio * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
        }
    }
    return OperatorMatrix{std::move(m), "affine(a=" + std::to_string(a) + ")"};
}

OperatorMatrix sigma_matrix(double a, int order) {
    check_a(a);
    check_order(order);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order + 1, order + 1);
    m(0, 0) = 1.0;
    const long double la = a;
    for (int n = 1; n <= order; ++n) {
        long double t = std::pow(la, static_cast<long double>(n));  // entry (n, n)
        for (int k = n; k <= order; ++k) {
            m(k, n) = static_cast<double>(t);
            // binom(k,n-1)/binom(k-1,n-1) = k/(k-n+1)
            t *= (1.0L - la) * static_cast<long double>(k) /
                 static_cast<long double>(k - n + 1);
        }
    }
    return OperatorMatrix{std::move(m), "sigma(a=" + std::to_string(a) + ")"};
}

OperatorMatrix cesaro_matrix(int order) {
    check_order(order);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order + 1, order + 1);
    for (int n = 0; n <= order; ++n)
        for (int k = 0; k <= n; ++k) m(n, k) = 1.0 / (n + 1.0);
    return OperatorMatrix{std::move(m), "cesaro"};
}

OperatorMatrix composition_matrix(const SymbolMap& symbol, int order) {
    switch (symbol.kind()) {
        case SymbolMap::Kind::affine:
            return affine_matrix(symbol.a(), order);
        case SymbolMap::Kind::moebius_sigma:
            return sigma_matrix(symbol.a(), order);
        case SymbolMap::Kind::general:
            break;
    }
    // column n = series of symbol^n, built by iterated multiplication
    TaylorSeries phi = symbol.series().order() == order
                           ? symbol.series()
                           : (symbol.series().order() > order ? symbol.series().truncated(order)
                                                              : symbol.series().extended(order));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order + 1, order + 1);
    TaylorSeries col = TaylorSeries::constant(1.0, order);
    for (int n = 0; n <= order; ++n) {
        for (int k = 0; k <= order; ++k) m(k, n) = col.coeffs()[k];
        if (n < order) col = multiply(col, phi);
    }
    return OperatorMatrix{std::move(m), "composition(general)"};
}

NormEstimate operator_norm(const Eigen::MatrixXcd& m, int iterations, double tol) {
    if (iterations < 1) throw std::invalid_argument("operator_norm needs iterations >= 1");
    const int n = static_cast<int>(m.cols());
    if (n == 0) return NormEstimate{0.0, true, 0};
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n)));
    double lambda = 0.0;
    NormEstimate out;
    for (int it = 1; it <= iterations; ++it) {
        Eigen::VectorXcd w = m.adjoint() * (m * v);
        double norm = w.norm();
        out.iterations = it;
        if (norm == 0.0) return NormEstimate{0.0, true, it};
        v = w / norm;
        // Rayleigh quotient of m^H m at the current iterate
        double next = std::real(v.dot(m.adjoint() * (m * v)));
        if (it > 1 && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
            lambda = next;
            out.converged = true;
            break;
        }
        lambda = next;
    }
    out.value = std::sqrt(std::max(0.0, lambda));
    return out;
}

double sigma_boundary_modulus(double a, double theta) {
    check_a(a);
    if (!(theta > 0.0 && theta <= 2.0 * std::numbers::pi + 1e-15))
        throw std::domain_error("theta must lie in (0, 2*pi]");
    const Complex e = std::polar(1.0, theta);
    return std::abs(a * e / (1.0 - e + a * e));
}

}  // namespace h2inv
