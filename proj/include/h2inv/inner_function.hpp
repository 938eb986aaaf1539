#pragma once

#include <optional>
#include <vector>

#include "h2inv/series.hpp"
#include "h2inv/types.hpp"

namespace h2inv {

/// A zero of an inner function inside the disk. generator_tail marks the
/// final element of a truncated generator expansion; invariance checks may
/// excuse that element's image escaping past the truncation horizon.
struct Zero {
    Complex point;
    int multiplicity = 1;
    bool generator_tail = false;
};

/// Boundary atom of the singular measure: point e^{i angle} with mass > 0.
struct Atom {
    double angle_radians = 0.0;
    double mass = 0.0;
    Complex xi() const { return std::polar(1.0, angle_radians); }
};

struct ZeroGenerator {
    enum class Kind { phi_orbit, explicit_sequence };
    Kind kind = Kind::phi_orbit;
    // phi-orbit parameters: points a^n z0 + 1 - a^n, n = 0..count-1.
    Complex z0;
    double a = 0.0;
    int count = 0;
    // explicit-sequence points.
    std::vector<Complex> points;
};

struct BlaschkeSummability {
    double partial_sum = 0.0;
    double tail_bound = 0.0;  // certified for phi-orbit; heuristic otherwise
    bool convergent = false;
};

/// Partial sums of sum mult*(1-|z_n|) over a generator, with a certified
/// geometric tail bound for phi-orbits and a ratio heuristic for explicit
/// sequences. Throws std::invalid_argument for unsupported generator kinds.
BlaschkeSummability blaschke_condition_check(const ZeroGenerator& gen, int horizon);

/// Symbolic description of an inner function: unimodular constant times a
/// Blaschke product over the zero list times a finitely-atomic singular
/// factor. Generators are expanded into the zero list at construction; the
/// originals are retained as provenance. Immutable once constructed.
class InnerFunctionSpec {
public:
    InnerFunctionSpec(Complex unimodular, std::vector<Zero> zeros, std::vector<Atom> atoms,
                      std::vector<ZeroGenerator> generators = {});

    static InnerFunctionSpec constant(Complex unimodular);
    /// z^n
    static InnerFunctionSpec power(int n);
    static InnerFunctionSpec single_atom(double angle_radians, double mass,
                                         Complex unimodular = 1.0);

    Complex unimodular() const { return unimodular_; }
    /// Expanded zero list: explicit zeros merged with generator expansions.
    const std::vector<Zero>& zeros() const { return zeros_; }
    /// The zeros as given at construction, before generator expansion.
    const std::vector<Zero>& explicit_zeros() const { return explicit_zeros_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<ZeroGenerator>& generators() const { return generators_; }

    bool zero_free() const { return zeros_.empty(); }
    bool is_constant() const { return zeros_.empty() && atoms_.empty(); }
    int zero_count() const;  // with multiplicity
    double total_atomic_mass() const;

    /// New spec with extra zeros merged in (multiplicities add on coincident
    /// points); atoms and unimodular constant are kept.
    InnerFunctionSpec with_merged_zeros(const std::vector<Zero>& extra,
                                        std::vector<ZeroGenerator> extra_gens = {}) const;

private:
    Complex unimodular_ = 1.0;
    std::vector<Zero> zeros_;
    std::vector<Zero> explicit_zeros_;
    std::vector<Atom> atoms_;
    std::vector<ZeroGenerator> generators_;
};

inline constexpr double kZeroCoincidenceTol = 1e-15;
inline constexpr double kZeroMatchTol = 1e-10;

/// Pointwise evaluation inside the disk. Exact 0 when z coincides with a
/// zero within 1e-15. Throws std::domain_error for |z| >= 1.
Complex inner_eval(const InnerFunctionSpec& spec, Complex z);

/// log|Theta(z)|; safe where inner_eval would underflow. -inf at zeros.
double inner_log_abs(const InnerFunctionSpec& spec, Complex z);

/// Taylor expansion at the given order: Blaschke factors by geometric-series
/// recurrence, singular factors via exp_series of the expanded exponent,
/// combined with multiply.
TaylorSeries taylor_of_inner(const InnerFunctionSpec& spec, int order);

struct SpectraReport {
    struct Sample {
        double theta;
        double min_modulus;
    };
    std::vector<Sample> grid;           // every angle
    std::vector<Sample> boundary_hits;  // angles with min below tol
    std::vector<Zero> interior_zeros;   // echo of the spec
    double tol = 0.0;
    int angular_grid_size = 0;
    std::vector<double> radius_schedule;
};

std::vector<double> default_radius_schedule();  // 1 - 2^-k, k = 1..20

/// min_k |Theta(r_k e^{i theta})| over the radius schedule per grid angle;
/// hits are the angles where the minimum falls below tol.
SpectraReport spectra_estimate(const InnerFunctionSpec& spec, int angular_grid_size,
                               std::vector<double> radius_schedule = default_radius_schedule(),
                               double tol = 0.1);

}  // namespace h2inv
