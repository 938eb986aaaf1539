#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "h2inv/inner_function.hpp"
#include "h2inv/operators.hpp"
#include "h2inv/subspaces.hpp"

namespace h2inv {

enum class Verdict { invariant, non_invariant, inconclusive };
enum class Method { compression, schur_quotient, multiplicity };

std::string to_string(Verdict v);
std::string to_string(Method m);

/// Verdict thresholds. tol_inv certifies structurally exact cases; the
/// non-invariance floor is a regression constant pinned from reference runs
/// over orders 64..256 (smallest observed witness residual ~0.15, largest
/// residual of an invariant-in-the-limit case ~0.05). Residuals in between
/// stay inconclusive and are interpreted through their order trend.
inline constexpr double kTolInv = 1e-8;
inline constexpr double kNonInvariantFloor = 0.1;
inline constexpr double kTolSup = 1e-6;

struct MultiplicityViolation {
    Complex zero;
    Complex image;
    int needed = 0;
    int found = 0;
};

struct ResidualTrend {
    std::vector<int> orders;
    std::vector<double> residuals;
    /// Every step within 10% noise of decreasing and an overall strict drop.
    bool decreasing() const;
};

/// Verdict + residuals + diagnostics of one certification run.
struct InvarianceReport {
    Verdict verdict = Verdict::inconclusive;
    Method method = Method::compression;
    double residual = 0.0;
    double tolerance = kTolInv;

    // compression diagnostics
    double op_norm = std::numeric_limits<double>::quiet_NaN();
    double residual_half = std::numeric_limits<double>::quiet_NaN();
    int sub_dim = 0;

    // schur diagnostics
    double sup_quotient = std::numeric_limits<double>::quiet_NaN();
    double argmax_theta = std::numeric_limits<double>::quiet_NaN();
    bool quotient_blocked = false;
    Complex blocked_zero{};
    Complex blocked_image{};

    // multiplicity diagnostics
    std::vector<MultiplicityViolation> violations;
    bool horizon_caveat = false;

    std::optional<ResidualTrend> trend;
    std::vector<std::string> caveats;

    // parameter echo
    std::string subject;
    std::string symbol;
    int order = 0;
    double a = std::numeric_limits<double>::quiet_NaN();
    double boundary_radius = std::numeric_limits<double>::quiet_NaN();
    int grid = 0;
};

/// residual = ||(I-P) op P|| / max(||op P||, eps) for the span projector P.
/// Invariant at tol, non-invariant above the pinned floor, inconclusive in
/// between; a half-order truncation residual is attached as a trend hint.
InvarianceReport compression_residual(const SubspaceBasis& sub, const OperatorMatrix& op,
                                      double tol = kTolInv);

/// The analytic quotient (Theta o psi) / Theta in factored closed form:
/// Blaschke factors are cancelled pairwise against the symbol's zero
/// mapping, leaving rational factors that are zero-free in the disk, plus
/// exponential factors for the atomic singular part. Evaluation works
/// pointwise (also in log-modulus, safe against overflow) and the truncated
/// Taylor series is recoverable.
class SchurQuotient {
public:
    struct RationalFactor {
        Complex scale;
        Complex c0, c1;  // numerator c0 + c1 z
        Complex beta;    // denominator 1 - beta z, |beta| < 1
        int power = 1;
    };
    struct AtomDelta {
        Complex xi;
        double mass = 0.0;
    };

    static SchurQuotient build(const InnerFunctionSpec& spec, const SymbolMap& symbol);

    bool blocked() const { return blocked_; }
    Complex blocked_zero() const { return blocked_zero_; }
    Complex blocked_image() const { return blocked_image_; }
    bool horizon_caveat() const { return horizon_caveat_; }

    Complex eval(Complex z) const;
    double log_abs(Complex z) const;
    TaylorSeries to_series(int order) const;

    const std::vector<RationalFactor>& rational_factors() const { return rationals_; }
    const std::vector<AtomDelta>& atom_deltas() const { return atom_deltas_; }

private:
    bool blocked_ = false;
    Complex blocked_zero_{};
    Complex blocked_image_{};
    bool horizon_caveat_ = false;
    std::vector<RationalFactor> rationals_;
    std::vector<AtomDelta> atom_deltas_;
    std::optional<SymbolMap> symbol_;
};

/// Beurling invariance criterion: quotient in the Schur class. Reports the
/// sup of |q| on the circle of the given radius (computed from the factored
/// closed form); invariant iff sup <= 1 + tol_sup. A zero whose image fails
/// to cancel blocks the division and certifies non-invariance.
InvarianceReport schur_quotient(const InnerFunctionSpec& spec, const SymbolMap& symbol,
                                int order, double boundary_radius = 0.999, int grid = 4096,
                                double tol_sup = kTolSup);

/// Exact criterion for Blaschke-part invariance: every zero w must reappear
/// in the list at phi_a(w) with at least the same multiplicity. A failing
/// zero is excused (with the horizon-limited caveat) only when it is the
/// final element of a generator expansion and its image moved past the
/// truncation horizon toward 1.
InvarianceReport multiplicity_criterion(const std::vector<Zero>& zeros, double a,
                                        double match_tol = kZeroMatchTol);

/// Orbit points a^n z0 + 1 - a^n for n = 0..count-1, by the stable
/// recurrence w_{n+1} = a w_n + 1 - a.
std::vector<Complex> zero_orbit(Complex z0, double a, int count);

/// Upsilon = B_orbit(z0) * Theta: merges the phi-orbit of z0 into the zero
/// list (atoms kept). Requires the input's Beurling space to certify
/// invariant for this a; the result is again invariant with a strictly
/// smaller usable Beurling dimension at fixed order.
InnerFunctionSpec enlarge_invariant(const InnerFunctionSpec& spec, double a, Complex z0,
                                    int orbit_count = 40);

enum class BeurlingClass { atomic_at_one, zeros_accumulating_at_one, not_invariant };

std::string to_string(BeurlingClass c);

struct BeurlingClassification {
    BeurlingClass cls = BeurlingClass::not_invariant;
    InvarianceReport evidence;
};

/// Dichotomy classifier: schur_quotient for zero-free specs, the
/// multiplicity criterion otherwise. An invariant verdict that fits neither
/// branch throws theorem_violation.
BeurlingClassification classify_beurling(const InnerFunctionSpec& spec, double a, int order);

struct OrbitRankProfile {
    std::vector<int> ranks;  // rank after k iterates, k = 1..m
};

/// Numerical ranks of the Gram matrices of {f, Cf, ..., C^{k-1}f} under
/// C_{phi_a}, thresholded at rank_tol times the leading singular value.
OrbitRankProfile orbit_span_rank(const TaylorSeries& f, double a, int iterations,
                                 double rank_tol = 1e-10);

/// Residuals of the same certification rebuilt at several orders.
ResidualTrend compression_trend(const std::function<SubspaceBasis(int)>& sub_builder,
                                const std::function<OperatorMatrix(int)>& op_builder,
                                const std::vector<int>& orders);

struct CesaroCorrespondence {
    InvarianceReport cesaro_side;  // model(spec) under the Cesaro operator
    std::vector<std::pair<double, InvarianceReport>> semigroup_side;  // (t, report)
    bool consistent = false;
};

/// Both sides of the Cesaro/semigroup pairing: the model space under the
/// Cesaro matrix (with a rebuilt residual trend over N/4, N/2, N) against
/// the Beurling space under C_{phi_t} for each t sample (certified by the
/// schur/multiplicity route). The consistency flag records whether the
/// verdicts agree under the perp pairing, treating a decreasing residual
/// trend as support for invariance in the limit.
CesaroCorrespondence cesaro_correspondence_check(const InnerFunctionSpec& spec,
                                                 const std::vector<double>& t_samples,
                                                 int order,
                                                 const BasisOptions& opts = {});

inline std::vector<double> default_t_samples() { return {0.693147180559945309417, 1.0, 3.0}; }

}  // namespace h2inv
