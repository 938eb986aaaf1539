#include "h2inv/inner_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace h2inv {

namespace {

constexpr double kUnimodularTol = 1e-12;

// Orbit points approach 1 geometrically; once 1 - w falls below the double
// representability floor the points collapse onto the boundary, so the
// expansion stops there (the recurrence keeps 1 - w_{n+1} = a (1 - w_n)).
constexpr double kOrbitDistanceFloor = 1e-14;

std::vector<Complex> phi_orbit_points(Complex z0, double a, int count) {
    std::vector<Complex> pts;
    pts.reserve(count);
    Complex w = z0;
    for (int n = 0; n < count; ++n) {
        if (n > 0 && std::abs(1.0 - w) <= kOrbitDistanceFloor) break;
        pts.push_back(w);
        w = a * w + (1.0 - a);
    }
    return pts;
}

void merge_zero(std::vector<Zero>& zeros, const Zero& z) {
    for (Zero& existing : zeros) {
        if (std::abs(existing.point - z.point) <= kZeroCoincidenceTol) {
            existing.multiplicity += z.multiplicity;
            existing.generator_tail = existing.generator_tail || z.generator_tail;
            return;
        }
    }
    zeros.push_back(z);
}

// Blaschke normalizer: conj(w)/|w| for w != 0; the zero-at-origin factor is
// plain z^m, which the -1 convention reproduces through nu(w)(w-z)/(1-conj(w)z).
Complex blaschke_normalizer(Complex w) {
    double r = std::abs(w);
    if (r < kZeroCoincidenceTol) return Complex(-1.0);
    return std::conj(w) / r;
}

}  // namespace

BlaschkeSummability blaschke_condition_check(const ZeroGenerator& gen, int horizon) {
    if (horizon < 1) throw std::invalid_argument("summability horizon must be >= 1");
    BlaschkeSummability out;
    switch (gen.kind) {
        case ZeroGenerator::Kind::phi_orbit: {
            if (!(gen.a > 0.0 && gen.a < 1.0))
                throw std::invalid_argument("phi-orbit parameter a must lie in (0,1)");
            if (std::abs(gen.z0) >= 1.0)
                throw std::invalid_argument("phi-orbit seed must lie in the open disk");
            const int m = std::min(horizon, gen.count > 0 ? gen.count : horizon);
            for (const Complex& w : phi_orbit_points(gen.z0, gen.a, m))
                out.partial_sum += 1.0 - std::abs(w);
            // 1-|w_n| <= |1-w_n| = a^n |1-z0| <= a^n (1+|z0|)
            out.tail_bound =
                std::pow(gen.a, m) * (1.0 + std::abs(gen.z0)) / (1.0 - gen.a);
            out.convergent = true;
            return out;
        }
        case ZeroGenerator::Kind::explicit_sequence: {
            if (gen.points.empty())
                throw std::invalid_argument("explicit-sequence generator has no points");
            std::vector<double> terms;
            const int m = static_cast<int>(gen.points.size());
            (void)horizon;
            for (int i = 0; i < m; ++i) {
                double t = 1.0 - std::abs(gen.points[i]);
                out.partial_sum += t;
                terms.push_back(t);
            }
            // geometric-type heuristic: the tail ratios must stay below 1
            double worst_ratio = 0.0;
            for (size_t i = terms.size() / 2; i + 1 < terms.size(); ++i) {
                if (terms[i] <= 0.0) continue;
                worst_ratio = std::max(worst_ratio, terms[i + 1] / terms[i]);
            }
            out.convergent = terms.size() < 2 || worst_ratio <= 0.999;
            if (out.convergent && worst_ratio > 0.0)
                out.tail_bound = terms.back() * worst_ratio / (1.0 - worst_ratio);
            return out;
        }
    }
    throw std::invalid_argument("unsupported zero generator kind");
}

InnerFunctionSpec::InnerFunctionSpec(Complex unimodular, std::vector<Zero> zeros,
                                     std::vector<Atom> atoms,
                                     std::vector<ZeroGenerator> generators)
    : unimodular_(unimodular), atoms_(std::move(atoms)), generators_(std::move(generators)) {
    require_finite(unimodular_, "InnerFunctionSpec.unimodular");
    if (std::abs(std::abs(unimodular_) - 1.0) > kUnimodularTol)
        throw std::invalid_argument("unimodular constant must have |lambda| = 1");
    for (const Zero& z : zeros) {
        require_finite(z.point, "InnerFunctionSpec.zero");
        if (std::abs(z.point) >= 1.0)
            throw std::invalid_argument("every Blaschke zero must lie strictly inside the disk");
        if (z.multiplicity < 1) throw std::invalid_argument("zero multiplicity must be >= 1");
        explicit_zeros_.push_back(z);
        merge_zero(zeros_, z);
    }
    for (const Atom& a : atoms_) {
        if (!is_finite(a.angle_radians) || !is_finite(a.mass))
            throw std::invalid_argument("atom parameters must be finite");
        if (a.mass <= 0.0) throw std::invalid_argument("atom mass must be positive");
    }
    for (const ZeroGenerator& gen : generators_) {
        // summability must be certified before the expansion is accepted
        const int horizon = gen.kind == ZeroGenerator::Kind::phi_orbit
                                ? std::max(1, gen.count)
                                : static_cast<int>(gen.points.size());
        BlaschkeSummability s = blaschke_condition_check(gen, horizon);
        if (!s.convergent)
            throw std::invalid_argument(
                "zero generator fails the Blaschke summability estimate");
        std::vector<Complex> pts;
        if (gen.kind == ZeroGenerator::Kind::phi_orbit)
            pts = phi_orbit_points(gen.z0, gen.a, gen.count);
        else
            pts = gen.points;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (std::abs(pts[i]) >= 1.0)
                throw std::invalid_argument("generated zero escaped the open disk");
            merge_zero(zeros_, Zero{pts[i], 1, i + 1 == pts.size()});
        }
    }
}

InnerFunctionSpec InnerFunctionSpec::constant(Complex unimodular) {
    return InnerFunctionSpec(unimodular, {}, {});
}

InnerFunctionSpec InnerFunctionSpec::power(int n) {
    if (n < 1) throw std::invalid_argument("power spec needs n >= 1");
    return InnerFunctionSpec(1.0, {Zero{Complex(0.0), n, false}}, {});
}

InnerFunctionSpec InnerFunctionSpec::single_atom(double angle_radians, double mass,
                                                 Complex unimodular) {
    return InnerFunctionSpec(unimodular, {}, {Atom{angle_radians, mass}});
}

int InnerFunctionSpec::zero_count() const {
    int n = 0;
    for (const Zero& z : zeros_) n += z.multiplicity;
    return n;
}

double InnerFunctionSpec::total_atomic_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.mass;
    return m;
}

InnerFunctionSpec InnerFunctionSpec::with_merged_zeros(
    const std::vector<Zero>& extra, std::vector<ZeroGenerator> extra_gens) const {
    std::vector<Zero> ez = explicit_zeros_;
    for (const Zero& z : extra) ez.push_back(z);
    std::vector<ZeroGenerator> gens = generators_;
    for (ZeroGenerator& g : extra_gens) gens.push_back(std::move(g));
    return InnerFunctionSpec(unimodular_, std::move(ez), atoms_, std::move(gens));
}

Complex inner_eval(const InnerFunctionSpec& spec, Complex z) {
    require_finite(z, "inner_eval");
    if (std::abs(z) >= 1.0) throw std::domain_error("inner_eval requires |z| < 1");
    for (const Zero& zero : spec.zeros())
        if (std::abs(z - zero.point) <= kZeroCoincidenceTol) return Complex(0.0);
    Complex v = spec.unimodular();
    for (const Zero& zero : spec.zeros()) {
        const Complex w = zero.point;
        Complex factor;
        if (std::abs(w) < kZeroCoincidenceTol) {
            factor = z;
        } else {
            factor = (std::conj(w) / std::abs(w)) * (w - z) / (1.0 - std::conj(w) * z);
        }
        for (int m = 0; m < zero.multiplicity; ++m) v *= factor;
    }
    for (const Atom& atom : spec.atoms()) {
        const Complex xi = atom.xi();
        v *= std::exp(-atom.mass * (xi + z) / (xi - z));
    }
    return v;
}

double inner_log_abs(const InnerFunctionSpec& spec, Complex z) {
    require_finite(z, "inner_log_abs");
    if (std::abs(z) >= 1.0) throw std::domain_error("inner_log_abs requires |z| < 1");
    double s = 0.0;
    for (const Zero& zero : spec.zeros()) {
        const Complex w = zero.point;
        double lf;
        if (std::abs(w) < kZeroCoincidenceTol) {
            lf = std::log(std::abs(z));
        } else {
            lf = std::log(std::abs(w - z)) - std::log(std::abs(1.0 - std::conj(w) * z));
        }
        s += zero.multiplicity * lf;
    }
    for (const Atom& atom : spec.atoms()) {
        const Complex xi = atom.xi();
        s += -atom.mass * ((xi + z) / (xi - z)).real();
    }
    return s;
}

TaylorSeries taylor_of_inner(const InnerFunctionSpec& spec, int order) {
    TaylorSeries acc = TaylorSeries::constant(spec.unimodular(), order);
    for (const Zero& zero : spec.zeros()) {
        const Complex w = zero.point;
        TaylorSeries factor = TaylorSeries::zero(order);
        if (std::abs(w) < kZeroCoincidenceTol) {
            if (order >= 1) factor = TaylorSeries::monomial(1, order);
        } else {
            // nu(w) (w - z) sum conj(w)^n z^n
            std::vector<Complex> c(order + 1, Complex(0.0));
            const Complex nu = blaschke_normalizer(w);
            const Complex wbar = std::conj(w);
            Complex p = 1.0;  // conj(w)^n
            for (int n = 0; n <= order; ++n) {
                c[n] += nu * w * p;
                if (n + 1 <= order) c[n + 1] -= nu * p;
                p *= wbar;
            }
            factor = TaylorSeries(std::move(c));
        }
        for (int m = 0; m < zero.multiplicity; ++m) acc = multiply(acc, factor);
    }
    for (const Atom& atom : spec.atoms()) {
        // exponent -K (xi+z)/(xi-z) = -K (1 + 2 sum_{n>=1} (z/xi)^n)
        std::vector<Complex> e(order + 1, Complex(0.0));
        e[0] = -atom.mass;
        const Complex inv_xi = 1.0 / atom.xi();
        Complex p = inv_xi;
        for (int n = 1; n <= order; ++n) {
            e[n] = -2.0 * atom.mass * p;
            p *= inv_xi;
        }
        acc = multiply(acc, exp_series(TaylorSeries(std::move(e))));
    }
    return acc;
}

std::vector<double> default_radius_schedule() {
    // starts at 1 - 2^-8: shallow radii let interior zeros shadow the
    // boundary behavior the spectra sweep is after
    std::vector<double> r;
    for (int k = 8; k <= 20; ++k) r.push_back(1.0 - std::pow(2.0, -k));
    return r;
}

SpectraReport spectra_estimate(const InnerFunctionSpec& spec, int angular_grid_size,
                               std::vector<double> radius_schedule, double tol) {
    if (angular_grid_size < 256)
        throw std::invalid_argument("spectra grid must have at least 256 angles");
    if (radius_schedule.empty())
        throw std::invalid_argument("radius schedule must be nonempty");
    for (size_t i = 0; i + 1 < radius_schedule.size(); ++i)
        if (!(radius_schedule[i] < radius_schedule[i + 1]))
            throw std::invalid_argument("radius schedule must increase toward 1");
    SpectraReport report;
    report.tol = tol;
    report.angular_grid_size = angular_grid_size;
    report.radius_schedule = radius_schedule;
    report.interior_zeros = spec.zeros();
    report.grid.reserve(angular_grid_size);
    for (int j = 0; j < angular_grid_size; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angular_grid_size;
        double best = std::numeric_limits<double>::infinity();
        for (double r : radius_schedule) {
            const Complex z = std::polar(r, theta);
            best = std::min(best, std::exp(inner_log_abs(spec, z)));
        }
        report.grid.push_back({theta, best});
        if (best < tol) report.boundary_hits.push_back({theta, best});
    }
    return report;
}

}  // namespace h2inv
