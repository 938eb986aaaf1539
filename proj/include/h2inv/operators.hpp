#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "h2inv/series.hpp"
#include "h2inv/types.hpp"

namespace h2inv {

/// Square complex matrix acting on coefficient space, basis e_0..e_N.
/// Column n of a composition matrix holds the Taylor coefficients of
/// symbol^n truncated to order N (compress-then-act semantics P_N C P_N).
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    std::string provenance;

    int order() const { return static_cast<int>(entries.rows()) - 1; }
    TaylorSeries apply(const TaylorSeries& f) const;
};

/// Holomorphic self-map of the disk used as a composition symbol.
///   affine:        phi_a(z) = a z + 1 - a
///   moebius_sigma: sigma_a(z) = a z / (1 - (1-a) z)
///   general:       an explicit truncated series, sup-grid validated
class SymbolMap {
public:
    enum class Kind { affine, moebius_sigma, general };

    static SymbolMap affine(double a);
    static SymbolMap moebius_sigma(double a);
    static SymbolMap general(TaylorSeries series);

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    const TaylorSeries& series() const;

    Complex eval(Complex z) const;
    std::string describe() const;

private:
    SymbolMap(Kind kind, double a) : kind_(kind), a_(a) {}
    Kind kind_;
    double a_;
    std::optional<TaylorSeries> series_;
};

/// phi_t from the holomorphic flow: affine symbol with a = e^{-t}, t > 0.
SymbolMap semigroup_member(double t);

/// entry(k,n) = binom(n,k) a^k (1-a)^{n-k} for k <= n (upper triangular).
OperatorMatrix affine_matrix(double a, int order);

/// entry(k,n) = a^n binom(k-1,n-1) (1-a)^{k-n} for k >= n >= 1; column 0 is
/// e_0 (lower triangular).
OperatorMatrix sigma_matrix(double a, int order);

/// entry(n,k) = 1/(n+1) for k <= n: row n averages a_0..a_n.
OperatorMatrix cesaro_matrix(int order);

/// Composition matrix for any symbol; dispatches to the closed forms above
/// for affine/sigma, builds columns by iterated series multiplication for
/// general symbols.
OperatorMatrix composition_matrix(const SymbolMap& symbol, int order);

struct NormEstimate {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Largest singular value by power iteration on m^H m with the
/// deterministic seed (1,...,1)/sqrt(N+1).
NormEstimate operator_norm(const Eigen::MatrixXcd& m, int iterations = 500,
                           double tol = 1e-10);
inline NormEstimate operator_norm(const OperatorMatrix& m, int iterations = 500,
                                  double tol = 1e-10) {
    return operator_norm(m.entries, iterations, tol);
}

/// |a e^{i theta} / (1 - e^{i theta} + a e^{i theta})| for theta in (0, 2pi];
/// always <= 1, equal to 1 only at e^{i theta} = 1.
double sigma_boundary_modulus(double a, double theta);

}  // namespace h2inv
