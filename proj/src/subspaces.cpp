#include "h2inv/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace h2inv {

namespace {

constexpr double kQrRankTol = 1e-12;

struct ColumnPlan {
    int k_max = 0;
    double tail_bound = 0.0;
};

// Tail profile: T_k = 1 - sum_{n <= N-k} |theta_n|^2 is the H^2 energy the
// order-N window discards from the column Theta*e_k (inner functions have
// unit norm, so the profile is exact). Columns are usable while the
// discarded tail stays below the policy gate.
ColumnPlan plan_columns(const InnerFunctionSpec& spec, const TaylorSeries& theta,
                        int order, const BasisOptions& opts) {
    std::vector<double> tail(order + 1);
    double captured = 0.0;
    std::vector<double> cum(order + 1);
    for (int n = 0; n <= order; ++n) {
        captured += std::norm(theta.coeffs()[n]);
        cum[n] = captured;
    }
    for (int m = 0; m <= order; ++m) tail[m] = std::max(0.0, 1.0 - cum[m]);

    const double t0 = tail[order];
    if (t0 > opts.resolution_cap)
        throw resolution_error(
            "inner function unresolved at order " + std::to_string(order) +
                " (shift-0 tail energy " + std::to_string(t0) +
                "); rebuild with a larger order",
            order, t0);

    auto deepest_with = [&](double gate) {
        // smallest m with tail[m] <= gate (tail is nonincreasing in m)
        int lo = 0, hi = order;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (tail[mid] <= gate)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    };

    ColumnPlan plan;
    if (t0 <= opts.tail_tol) {
        const int m_star = deepest_with(opts.tail_tol);
        plan.k_max = order - m_star;
        plan.tail_bound = tail[std::max(0, order - plan.k_max)];
        return plan;
    }
    // Partially resolved: gate relative to the irreducible tail, and keep the
    // shift range within the window budget. Off-origin zeros resolvable at
    // this order each displace the coefficient mass by one index, so they
    // spend a unit of the budget.
    const int m_star = deepest_with(opts.window_margin * t0);
    const int k_raw = order - m_star;
    int resolvable = 0;
    for (const Zero& z : spec.zeros()) {
        const double r = std::abs(z.point);
        if (r > 0.0 && (1.0 - r) >= 1.0 / order) resolvable += z.multiplicity;
    }
    const int budget = std::max(
        0, static_cast<int>(std::floor(opts.window_budget_scale * std::sqrt(double(order)))) -
               resolvable);
    plan.k_max = std::min(k_raw, budget);
    plan.tail_bound = tail[order - plan.k_max];
    return plan;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& cols) {
    if (cols.cols() == 0) return cols;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(cols);
    qr.setThreshold(kQrRankTol);
    const int rank = static_cast<int>(qr.rank());
    Eigen::MatrixXcd q = qr.householderQ() *
                         Eigen::MatrixXcd::Identity(cols.rows(), rank);
    return q;
}

Eigen::MatrixXcd orthogonal_complement(const Eigen::MatrixXcd& ortho_cols, int n) {
    if (ortho_cols.cols() == 0) return Eigen::MatrixXcd::Identity(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ortho_cols);
    Eigen::MatrixXcd full = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    return full.rightCols(n - ortho_cols.cols());
}

}  // namespace

SubspaceBasis beurling_basis(const InnerFunctionSpec& spec, int order,
                             const BasisOptions& opts) {
    if (order < 1) throw std::invalid_argument("beurling_basis needs order >= 1");
    const TaylorSeries theta = taylor_of_inner(spec, order);
    const ColumnPlan plan = plan_columns(spec, theta, order, opts);
    Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(order + 1, plan.k_max + 1);
    for (int k = 0; k <= plan.k_max; ++k)
        for (int n = 0; n + k <= order; ++n) cols(n + k, k) = theta.coeffs()[n];
    SubspaceBasis basis;
    basis.vectors = orthonormalize(cols);
    basis.label = "beurling";
    basis.order = order;
    basis.usable_shifts = plan.k_max;
    basis.tail_bound = plan.tail_bound;
    return basis;
}

SubspaceBasis model_basis(const InnerFunctionSpec& spec, int order,
                          const BasisOptions& opts) {
    SubspaceBasis beurling = beurling_basis(spec, order, opts);
    SubspaceBasis basis;
    basis.vectors = orthogonal_complement(beurling.vectors, order + 1);
    basis.label = "model";
    basis.order = order;
    basis.tail_bound = beurling.tail_bound;
    return basis;
}

TaylorSeries model_kernel(const InnerFunctionSpec& spec, Complex lambda, int order) {
    if (std::abs(lambda) >= 1.0)
        throw std::domain_error("model kernel point must satisfy |lambda| < 1");
    const Complex theta_at_lambda = inner_eval(spec, lambda);
    const TaylorSeries theta = taylor_of_inner(spec, order);
    TaylorSeries one_minus = subtract(TaylorSeries::constant(1.0, order),
                                      scale(std::conj(theta_at_lambda), theta));
    return multiply(kernel(lambda, order), one_minus);
}

SubspaceBasis poly_subspace(int n, int order) {
    if (n < 1) throw std::invalid_argument("poly_subspace needs n >= 1");
    if (n > order) throw std::invalid_argument("poly_subspace needs n <= order");
    SubspaceBasis basis;
    basis.vectors = Eigen::MatrixXcd::Zero(order + 1, n);
    for (int k = 0; k < n; ++k) basis.vectors(k, k) = 1.0;
    basis.label = "poly(" + std::to_string(n) + ")";
    basis.order = order;
    return basis;
}

SubspaceBasis shifted_model_basis(int n, const InnerFunctionSpec& spec, int order,
                                  const BasisOptions& opts) {
    if (n < 1) throw std::invalid_argument("shifted_model_basis needs n >= 1");
    if (order - n < 1)
        throw std::invalid_argument("shifted_model_basis needs n + 1 <= order");
    SubspaceBasis inner = model_basis(spec, order - n, opts);
    SubspaceBasis basis;
    basis.vectors = Eigen::MatrixXcd::Zero(order + 1, inner.dim());
    basis.vectors.bottomRows(order + 1 - n) = inner.vectors;
    basis.label = "shifted-model(" + std::to_string(n) + ")";
    basis.order = order;
    basis.tail_bound = inner.tail_bound;
    return basis;
}

DirectSumCheck direct_sum_check(const SubspaceBasis& a, const SubspaceBasis& b,
                                const SubspaceBasis& c) {
    if (a.order != b.order || a.order != c.order)
        throw std::invalid_argument("direct_sum_check requires a common order");
    DirectSumCheck out;
    if (a.dim() > 0 && b.dim() > 0) {
        Eigen::MatrixXcd cross = a.vectors.adjoint() * b.vectors;
        out.max_cross = cross.cwiseAbs().maxCoeff();
    }
    out.orthogonal = out.max_cross <= 1e-8;
    Eigen::MatrixXcd diff = projector(a) + projector(b) - projector(c);
    out.defect = operator_norm(diff).value;
    out.spans_match = (a.dim() + b.dim() == c.dim()) && out.defect <= 1e-6;
    return out;
}

Eigen::MatrixXcd projector(const SubspaceBasis& basis) {
    const int n = basis.order + 1;
    if (basis.dim() == 0) return Eigen::MatrixXcd::Zero(n, n);
    return basis.vectors * basis.vectors.adjoint();
}

}  // namespace h2inv
