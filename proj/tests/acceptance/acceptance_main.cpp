// Acceptance suite: runs every toolkit-level certification criterion and
// prints one PASS/FAIL line each. Exit code = number of failed criteria.
//
// Regression constants marked "pinned" were measured with this
// implementation at orders 64/128/256 and are frozen here as the reference
// behavior; they are not derived from closed forms.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "h2inv/invariance.hpp"
#include "h2inv/report_io.hpp"
#include "h2inv/spec_io.hpp"

using namespace h2inv;

namespace {

struct Harness {
    int failures = 0;
    int current = 0;
    std::vector<std::string> notes;
    bool ok = true;

    void begin(int id) {
        current = id;
        notes.clear();
        ok = true;
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void finish(const std::string& label) {
        std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", current, label.c_str());
        if (!ok) {
            ++failures;
            for (const auto& n : notes) std::printf("         - %s\n", n.c_str());
        }
    }
};

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

InnerFunctionSpec atomic_spec(double mass, double angle = 0.0) {
    return InnerFunctionSpec::single_atom(angle, mass);
}

InnerFunctionSpec orbit_spec(Complex z0, double a, int count = 40) {
    ZeroGenerator gen;
    gen.kind = ZeroGenerator::Kind::phi_orbit;
    gen.z0 = z0;
    gen.a = a;
    gen.count = count;
    return InnerFunctionSpec(1.0, {}, {}, {gen});
}

/// zeros (1 - a^{2n})_{n>=1}: the phi-orbit of 1-a^2 under a^2
InnerFunctionSpec common_spec(double a = 0.5, int count = 30) {
    return orbit_spec(Complex(1.0 - a * a), a * a, count);
}

double model_residual(const InnerFunctionSpec& spec, const OperatorMatrix& op, int order) {
    return compression_residual(model_basis(spec, order), op).residual;
}

double beurling_residual(const InnerFunctionSpec& spec, const OperatorMatrix& op, int order) {
    return compression_residual(beurling_basis(spec, order), op).residual;
}

}  // namespace

int main() {
    Harness h;

    // 1. Polynomial model spaces are invariant under every affine symbol.
    h.begin(1);
    for (int n : {1, 4, 16}) {
        for (double a : {0.3, 0.5, 0.9}) {
            auto r = compression_residual(poly_subspace(n, 128), affine_matrix(a, 128));
            h.require(r.residual <= 1e-10,
                      "poly(" + std::to_string(n) + "), a=" + fmt(a) + ": residual " +
                          fmt(r.residual));
            h.require(r.verdict == Verdict::invariant, "verdict not invariant");
        }
    }
    h.finish("polynomial model spaces invariant under C_phi_a (residual <= 1e-10)");

    // 2. The atomic model space is not affine-invariant; the residual is far
    //    above tolerance and stable in the truncation order.
    h.begin(2);
    {
        const double pinned = 0.5514;  // pinned reference at N = 128
        auto spec = atomic_spec(1.0);
        for (int n : {64, 128, 256}) {
            auto r = compression_residual(model_basis(spec, n), affine_matrix(0.5, n));
            h.require(r.residual > 10.0 * kTolInv,
                      "N=" + std::to_string(n) + ": residual too small " + fmt(r.residual));
            h.require(std::abs(r.residual - pinned) <= 0.15 * pinned,
                      "N=" + std::to_string(n) + ": residual " + fmt(r.residual) +
                          " drifted beyond 15% of pinned " + fmt(pinned));
            h.require(r.verdict == Verdict::non_invariant, "verdict not non_invariant");
        }
    }
    h.finish("singular (atomic) model space non-invariant, stable residual across N");

    // 3. Atomic Beurling invariance with the closed-form Schur quotient.
    h.begin(3);
    {
        struct Case {
            double K, a;
        };
        for (auto [K, a] : {Case{1.0, 0.5}, Case{2.0, 0.5}, Case{1.0, 0.8}}) {
            auto r = schur_quotient(atomic_spec(K), SymbolMap::affine(a), 256);
            const double closed_form = std::exp(-K * (1.0 - a) / a);
            h.require(r.verdict == Verdict::invariant,
                      "K=" + fmt(K) + ", a=" + fmt(a) + ": not invariant");
            h.require(std::abs(r.sup_quotient - closed_form) <= 1e-3,
                      "K=" + fmt(K) + ", a=" + fmt(a) + ": sup " + fmt(r.sup_quotient) +
                          " vs closed form " + fmt(closed_form));
        }
        // coefficientwise identity: q = e^{-K'} * atomic(K'), K' = K(1-a)/a
        const double K = 1.0, a = 0.5, mass = K * (1.0 - a) / a;
        auto series = SchurQuotient::build(atomic_spec(K), SymbolMap::affine(a)).to_series(256);
        auto reference = scale(std::exp(-mass), taylor_of_inner(atomic_spec(mass), 256));
        double worst = 0.0;
        for (int n = 0; n <= 256; ++n)
            worst = std::max(worst, std::abs(series.coeff(n) - reference.coeff(n)));
        h.require(worst <= 1e-8, "coefficient identity defect " + fmt(worst));
    }
    h.finish("atomic Beurling spaces invariant; Schur sup matches e^{-K(1-a)/a}");

    // 4. The common example: invariant for a^2, violated at w = 1-a^2 for a.
    h.begin(4);
    {
        auto spec = common_spec(0.5, 30);
        auto good = multiplicity_criterion(spec.zeros(), 0.25);
        h.require(good.verdict == Verdict::invariant, "a^2 verdict not invariant");
        h.require(good.horizon_caveat, "a^2 certification missing horizon caveat");
        auto bad = multiplicity_criterion(spec.zeros(), 0.5);
        h.require(bad.verdict == Verdict::non_invariant, "a verdict not non_invariant");
        bool witness = false;
        for (const auto& v : bad.violations)
            if (std::abs(v.zero - Complex(0.75)) <= 1e-12 &&
                std::abs(v.image - Complex(0.875)) <= 1e-12)
                witness = true;
        h.require(witness, "missing violation witness at w = 1-a^2");
    }
    h.finish("zeros (1-a^{2n}): invariant for a^2, violation witness at 1-a^2 for a");

    // 5. Zero-orbit Beurling spaces: multiplicity passes with the horizon
    //    caveat and the compression residual decreases with the order.
    h.begin(5);
    for (Complex z0 : {Complex(0.0), Complex(0.0, 0.2)}) {
        for (double a : {0.5, 0.7}) {
            auto spec = orbit_spec(z0, a);
            auto mult = multiplicity_criterion(spec.zeros(), a);
            std::string tag = "z0=(" + fmt(z0.real()) + "," + fmt(z0.imag()) + "), a=" + fmt(a);
            h.require(mult.verdict == Verdict::invariant, tag + ": multiplicity failed");
            h.require(mult.horizon_caveat, tag + ": missing horizon caveat");
            std::vector<double> res;
            for (int n : {64, 128, 256})
                res.push_back(beurling_residual(spec, affine_matrix(a, n), n));
            for (size_t i = 0; i + 1 < res.size(); ++i)
                h.require(res[i + 1] <= res[i] * 1.10,
                          tag + ": residuals " + fmt(res[i]) + " -> " + fmt(res[i + 1]) +
                              " not decreasing within 10%");
            h.require(res.back() < res.front(), tag + ": no overall decrease");
        }
    }
    h.finish("zero-orbit Beurling spaces invariant; residual decreases over N");

    // 6. Strict enlargement of an invariant Beurling space.
    h.begin(6);
    {
        auto theta = atomic_spec(1.0);
        auto u1 = enlarge_invariant(theta, 0.5, Complex(0.0));
        auto u2 = enlarge_invariant(u1, 0.5, Complex(0.0, 0.2));
        int d0 = beurling_basis(theta, 128).dim();
        int d1 = beurling_basis(u1, 128).dim();
        int d2 = beurling_basis(u2, 128).dim();
        h.require(multiplicity_criterion(u1.zeros(), 0.5).verdict == Verdict::invariant,
                  "first enlargement not invariant");
        h.require(multiplicity_criterion(u2.zeros(), 0.5).verdict == Verdict::invariant,
                  "second enlargement not invariant");
        h.require(d1 < d0, "dim not strictly smaller: " + std::to_string(d0) + " -> " +
                               std::to_string(d1));
        h.require(d2 < d1, "second dim not strictly smaller: " + std::to_string(d1) + " -> " +
                               std::to_string(d2));
    }
    h.finish("enlargement keeps invariance and strictly shrinks the Beurling span");

    // 7. Cesaro Beurling characterization.
    h.begin(7);
    {
        for (int n : {1, 3, 8}) {
            auto r = compression_residual(beurling_basis(InnerFunctionSpec::power(n), 128),
                                          cesaro_matrix(128));
            h.require(r.residual <= 1e-10,
                      "z^" + std::to_string(n) + ": residual " + fmt(r.residual));
        }
        const double pinned_floor = 0.6;  // pinned: measured ~0.7846 at 64..256
        for (int n : {64, 128, 256}) {
            double r = beurling_residual(atomic_spec(1.0), cesaro_matrix(n), n);
            h.require(r >= pinned_floor, "atomic N=" + std::to_string(n) +
                                             ": residual " + fmt(r) + " below pinned floor");
        }
    }
    h.finish("Cesaro: z^n Beurling spaces invariant, atomic Beurling space is not");

    // 8. Cesaro model characterization trend.
    h.begin(8);
    {
        std::vector<double> res;
        for (int n : {64, 128, 256})
            res.push_back(model_residual(atomic_spec(1.0), cesaro_matrix(n), n));
        h.require(res[1] < res[0] && res[2] < res[1],
                  "atomic model residuals not strictly decreasing: " + fmt(res[0]) + ", " +
                      fmt(res[1]) + ", " + fmt(res[2]));
        const double pinned_floor = 0.10;  // pinned: measured >= 0.152 at 64..256
        for (int n : {64, 128, 256}) {
            double r = model_residual(common_spec(), cesaro_matrix(n), n);
            h.require(r >= pinned_floor, "common N=" + std::to_string(n) + ": residual " +
                                             fmt(r) + " fell below the pinned floor");
        }
    }
    h.finish("Cesaro: atomic model residual strictly decreases; common stays bounded away");

    // 9. Kernel cyclicity via orbit span ranks.
    h.begin(9);
    {
        auto flat = orbit_span_rank(TaylorSeries::constant(1.0, 128), 0.5, 8);
        for (int r : flat.ranks) h.require(r == 1, "kappa_0 rank " + std::to_string(r));
        auto profile = orbit_span_rank(kernel(Complex(0.5), 128), 0.5, 8);
        h.require(profile.ranks[0] == 1, "kappa_{0.5} rank_1 != 1");
        for (size_t k = 1; k < profile.ranks.size(); ++k) {
            h.require(profile.ranks[k] >= profile.ranks[k - 1], "ranks not nondecreasing");
            h.require(profile.ranks[k] >= 2, "rank below 2 from the second iterate");
        }
    }
    h.finish("kappa_0 orbit stays rank 1; kappa_{0.5} orbit rank >= 2 and nondecreasing");

    // 10. Boundary modulus lemma for sigma.
    h.begin(10);
    for (double a : {0.1, 0.5, 0.9}) {
        double max_val = 0.0;
        const int grid = 8192;
        for (int j = 0; j <= grid; ++j) {
            double theta = 1e-3 + (2.0 * std::numbers::pi - 2e-3) * j / grid;
            max_val = std::max(max_val, sigma_boundary_modulus(a, theta));
        }
        h.require(max_val < 1.0, "a=" + fmt(a) + ": grid max " + fmt(max_val));
        h.require(std::abs(sigma_boundary_modulus(a, 2.0 * std::numbers::pi) - 1.0) <= 1e-12,
                  "a=" + fmt(a) + ": modulus at theta=2pi differs from 1");
    }
    h.finish("sigma boundary modulus < 1 away from theta = 0 and = 1 at theta = 2pi");

    // 11. Direct-sum decomposition of (z^n S H^2)^perp.
    h.begin(11);
    for (int n : {1, 2}) {
        auto s = atomic_spec(1.0);
        auto zn_s = InnerFunctionSpec(1.0, {Zero{Complex(0.0), n, false}}, {Atom{0.0, 1.0}});
        auto check = direct_sum_check(poly_subspace(n, 128), shifted_model_basis(n, s, 128),
                                      model_basis(zn_s, 128));
        h.require(check.orthogonal, "n=" + std::to_string(n) + ": summands not orthogonal");
        h.require(check.defect <= 1e-6,
                  "n=" + std::to_string(n) + ": defect " + fmt(check.defect));
        h.require(check.spans_match, "n=" + std::to_string(n) + ": spans do not match");
    }
    h.finish("(z^n S H^2)^perp = C_{n-1}[z] + z^n (S H^2)^perp with defect <= 1e-6");

    // 12. Duality: model-side compression verdicts match Beurling-side
    //     sigma-quotient verdicts across the corpus.
    h.begin(12);
    {
        struct Entry {
            std::string name;
            InnerFunctionSpec spec;
        };
        std::vector<Entry> corpus;
        corpus.push_back({"z", InnerFunctionSpec::power(1)});
        corpus.push_back({"z^3", InnerFunctionSpec::power(3)});
        corpus.push_back({"atomic(K=1)", atomic_spec(1.0)});
        corpus.push_back({"atomic(K=2)", atomic_spec(2.0)});
        corpus.push_back({"blaschke(1/2)", InnerFunctionSpec(1.0, {Zero{Complex(0.5), 1}}, {})});
        corpus.push_back({"orbit(0,0.5)", orbit_spec(Complex(0.0), 0.5)});
        corpus.push_back({"common", common_spec()});
        corpus.push_back(
            {"z*atomic", InnerFunctionSpec(1.0, {Zero{Complex(0.0), 1}}, {Atom{0.0, 1.0}})});
        for (double a : {0.3, 0.5}) {
            for (const auto& [name, spec] : corpus) {
                auto model_side = compression_residual(model_basis(spec, 128),
                                                       affine_matrix(a, 128));
                auto schur_side = schur_quotient(spec, SymbolMap::moebius_sigma(a), 128);
                h.require(model_side.verdict == schur_side.verdict,
                          name + ", a=" + fmt(a) + ": " + to_string(model_side.verdict) +
                              " vs " + to_string(schur_side.verdict));
            }
        }
    }
    h.finish("model-side compression verdicts match sigma Schur-quotient verdicts");

    // 13. Spectra necessity: invariant specs have a flagged arc through
    //     theta = 0; the atom at -1 certifies non-invariant.
    h.begin(13);
    {
        std::vector<std::pair<std::string, InnerFunctionSpec>> invariant_corpus;
        invariant_corpus.push_back({"atomic(K=1)", atomic_spec(1.0)});
        invariant_corpus.push_back({"atomic(K=2)", atomic_spec(2.0)});
        invariant_corpus.push_back({"orbit(0,0.5)", orbit_spec(Complex(0.0), 0.5)});
        invariant_corpus.push_back({"orbit(0.2i,0.5)", orbit_spec(Complex(0.0, 0.2), 0.5)});
        invariant_corpus.push_back({"common(a^2)", common_spec()});
        for (const auto& [name, spec] : invariant_corpus) {
            auto report = spectra_estimate(spec, 1024);
            h.require(!report.grid.empty() && report.grid[0].min_modulus < report.tol,
                      name + ": no flagged arc at theta = 0");
        }
        auto minus = schur_quotient(atomic_spec(1.0, std::numbers::pi),
                                    SymbolMap::affine(0.5), 128);
        h.require(minus.verdict == Verdict::non_invariant, "atom at -1 not refuted");
    }
    h.finish("invariant specs flag theta = 0 in the spectra sweep; atom at -1 refuted");

    // 14. Numerical hygiene.
    h.begin(14);
    {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 25; ++trial) {
            int order = 1 + int(rng() % 96);
            std::vector<Complex> c(order + 1);
            for (auto& x : c) x = Complex(u(rng), u(rng));
            TaylorSeries f{c};
            Complex w = std::polar(0.9 * std::abs(u(rng)), std::numbers::pi * u(rng));
            h.require(std::abs(inner_product(f, kernel(w, order)) - eval(f, w)) <= 1e-10,
                      "reproducing identity failed");
        }
        for (const auto& basis :
             {poly_subspace(5, 64), beurling_basis(atomic_spec(1.0), 64),
              model_basis(atomic_spec(1.0), 64)}) {
            Eigen::MatrixXcd p = projector(basis);
            h.require((p * p - p).cwiseAbs().maxCoeff() <= 1e-10, "projector not idempotent");
            h.require((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
                      "projector not self-adjoint");
        }
        Eigen::MatrixXcd ab =
            affine_matrix(0.6, 64).entries * affine_matrix(0.75, 64).entries;
        h.require((ab - affine_matrix(0.45, 64).entries).cwiseAbs().maxCoeff() <= 1e-12,
                  "semigroup matrix law failed");
        for (double a : {0.3, 0.5, 0.9}) {
            auto norm = operator_norm(affine_matrix(a, 128));
            h.require(norm.value <= std::sqrt((2.0 - a) / a) + 1e-8,
                      "a=" + fmt(a) + ": norm " + fmt(norm.value) + " above the ceiling");
        }
    }
    h.finish("reproducing kernels, projectors, semigroup law, norm ceiling");

    std::printf("%d of 14 criteria passed\n", 14 - h.failures);
    return h.failures;
}
