#pragma once

#include <Eigen/Dense>
#include <string>

#include "h2inv/inner_function.hpp"
#include "h2inv/operators.hpp"
#include "h2inv/series.hpp"

namespace h2inv {

/// Orthonormal spanning set of a subspace of coefficient space (order N),
/// with provenance label and truncation metadata for Beurling bases.
struct SubspaceBasis {
    Eigen::MatrixXcd vectors;  // columns orthonormal; may have zero columns
    std::string label;
    int order = 0;
    /// Largest usable shift k for the columns Theta*e_k, k = 0..usable_shifts
    /// (-1 when not applicable, e.g. polynomial or complement bases).
    int usable_shifts = -1;
    /// Largest discarded tail energy among the included columns.
    double tail_bound = 0.0;

    int dim() const { return static_cast<int>(vectors.cols()); }
};

struct BasisOptions {
    /// Column tail-energy gate used verbatim when the symbol is fully
    /// resolved at order N (tail at shift 0 already below it).
    double tail_tol = 1e-8;
    /// Hard resolution gate: shift-0 tail above this raises resolution_error.
    double resolution_cap = 0.25;
    /// Partially-resolved regime: columns may lose up to margin times the
    /// irreducible shift-0 tail ...
    double window_margin = 1.25;
    /// ... and the shift range is additionally limited to the window budget
    /// floor(2 sqrt(N)) minus the count of window-resolvable zeros off the
    /// origin (each consumes one column of depth).
    double window_budget_scale = 2.0;
};

/// Orthonormal basis of (the order-N window realization of) Theta H^2:
/// the columns Theta*e_k for k = 0..K_max, orthonormalized by column-pivoted
/// QR. K_max comes from the tail policy in BasisOptions; the discarded tail
/// bound is recorded. Throws resolution_error when even the k = 0 column is
/// unresolved at this order.
SubspaceBasis beurling_basis(const InnerFunctionSpec& spec, int order,
                             const BasisOptions& opts = {});

/// Orthonormal basis of the orthogonal complement of the Beurling span,
/// computed as the trailing columns of a full QR of the Beurling basis.
SubspaceBasis model_basis(const InnerFunctionSpec& spec, int order,
                          const BasisOptions& opts = {});

/// kappa_lambda^Theta = (1 - conj(Theta(lambda)) Theta(z)) kappa_lambda(z).
TaylorSeries model_kernel(const InnerFunctionSpec& spec, Complex lambda, int order);

/// span{e_0, ..., e_{n-1}} = polynomials of degree < n.
SubspaceBasis poly_subspace(int n, int order);

/// z^n (Theta H^2)^perp: the model basis built at order N-n, shifted up by n.
/// The shift is an isometry, so orthonormality is preserved exactly.
SubspaceBasis shifted_model_basis(int n, const InnerFunctionSpec& spec, int order,
                                  const BasisOptions& opts = {});

struct DirectSumCheck {
    bool orthogonal = false;
    bool spans_match = false;
    double defect = 0.0;     // ||P_A + P_B - P_C|| estimate
    double max_cross = 0.0;  // max |<a_i, b_j>|
};

/// Diagnostic comparison of span(A) + span(B) against span(C).
DirectSumCheck direct_sum_check(const SubspaceBasis& a, const SubspaceBasis& b,
                                const SubspaceBasis& c);

/// P = V V^H; idempotent and self-adjoint by construction.
Eigen::MatrixXcd projector(const SubspaceBasis& basis);

}  // namespace h2inv
