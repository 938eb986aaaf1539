#pragma once

#include <vector>

#include "h2inv/types.hpp"

namespace h2inv {

/// Truncated power-series representative of an H^2 function.
///
/// Coefficient n is the coefficient of z^n; the order N is len-1 and is
/// always explicit. Binary operations require equal orders — callers
/// reconcile orders with truncated()/extended() rather than relying on
/// silent padding. Values are immutable after construction and all
/// operations are pure, so series can be shared freely across threads.
class TaylorSeries {
public:
    explicit TaylorSeries(std::vector<Complex> coeffs);

    static TaylorSeries zero(int order);
    static TaylorSeries constant(Complex value, int order);
    /// e_n: the basis monomial z^n.
    static TaylorSeries monomial(int n, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    int size() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int n) const;  // bounds-checked

    TaylorSeries truncated(int order) const;
    TaylorSeries extended(int order) const;
    /// Multiplication by z^k at fixed order (top k coefficients drop off).
    TaylorSeries shifted(int k) const;

    double norm_squared() const;
    double norm() const;

private:
    std::vector<Complex> coeffs_;
};

/// <f,g> = sum a_n conj(b_n). Conjugate-symmetric, linear in the first
/// argument. Throws std::invalid_argument on mismatched orders.
Complex inner_product(const TaylorSeries& f, const TaylorSeries& g);

/// Horner evaluation of the truncated polynomial.
Complex eval(const TaylorSeries& f, Complex z);

/// Reproducing kernel k_w(z) = 1/(1 - conj(w) z) truncated at order N;
/// coefficient n is conj(w)^n. Requires |w| < 1.
TaylorSeries kernel(Complex w, int order);

TaylorSeries add(const TaylorSeries& f, const TaylorSeries& g);
TaylorSeries subtract(const TaylorSeries& f, const TaylorSeries& g);
TaylorSeries scale(Complex c, const TaylorSeries& f);

/// Cauchy product truncated to the common order.
TaylorSeries multiply(const TaylorSeries& f, const TaylorSeries& g);

inline constexpr double kDivisionEpsilon = 1e-13;

/// Forward-recurrence division; requires |g_0| > eps.
TaylorSeries divide(const TaylorSeries& f, const TaylorSeries& g,
                    double eps = kDivisionEpsilon);

/// exp of a series via the convolution recurrence h' = f' h.
TaylorSeries exp_series(const TaylorSeries& f);

}  // namespace h2inv
