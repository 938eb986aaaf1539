#include <doctest.h>

#include "h2inv/invariance.hpp"
#include "h2inv/subspaces.hpp"
#include "oracles.hpp"

using namespace h2inv;

namespace {

Eigen::MatrixXcd embed(const TaylorSeries& f) {
    Eigen::VectorXcd v(f.size());
    for (int n = 0; n < f.size(); ++n) v(n) = f.coeffs()[n];
    return v;
}

double span_residual(const SubspaceBasis& basis, const TaylorSeries& f) {
    Eigen::VectorXcd v = embed(f);
    Eigen::VectorXcd out = v - basis.vectors * (basis.vectors.adjoint() * v);
    return out.norm() / v.norm();
}

InnerFunctionSpec atomic_spec(double mass = 1.0) {
    return InnerFunctionSpec::single_atom(0.0, mass);
}

}  // namespace

TEST_CASE("beurling basis of z^3 is the shifted monomial span") {
    const int order = 32;
    auto basis = beurling_basis(InnerFunctionSpec::power(3), order);
    CHECK(basis.dim() == order - 2);
    CHECK(basis.usable_shifts == order - 3);
    CHECK(basis.tail_bound <= 1e-15);
    Eigen::MatrixXcd p = projector(basis);
    for (int k = 0; k <= order; ++k) {
        double expect = k >= 3 ? 1.0 : 0.0;
        CHECK(std::abs(p(k, k).real() - expect) <= 1e-12);
    }
}

TEST_CASE("beurling basis spans the truncated multiplication columns") {
    const int order = 48;
    auto spec = InnerFunctionSpec(1.0, {Zero{Complex(0.5), 1}}, {});
    auto basis = beurling_basis(spec, order);
    auto theta = taylor_of_inner(spec, order);
    CHECK(span_residual(basis, theta) <= 1e-10);
    CHECK(span_residual(basis, theta.shifted(basis.usable_shifts)) <= 1e-10);
    // orthonormality
    Eigen::MatrixXcd gram = basis.vectors.adjoint() * basis.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
}

TEST_CASE("column isometry defect stays within the recorded tail bound") {
    const int order = 96;
    for (const auto& spec :
         {atomic_spec(), InnerFunctionSpec(1.0, {Zero{Complex(0.5), 1}}, {})}) {
        auto basis = beurling_basis(spec, order);
        auto theta = taylor_of_inner(spec, order);
        for (int k = 0; k <= basis.usable_shifts; k += 7) {
            double mass = theta.shifted(k).norm_squared();
            CHECK(mass >= 1.0 - basis.tail_bound - 1e-12);
            CHECK(mass <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("model basis complements the beurling span") {
    const int order = 64;
    for (const auto& spec : {InnerFunctionSpec::power(2), atomic_spec()}) {
        auto b = beurling_basis(spec, order);
        auto m = model_basis(spec, order);
        CHECK(b.dim() + m.dim() == order + 1);
        Eigen::MatrixXcd sum = projector(b) + projector(m);
        CHECK((sum - Eigen::MatrixXcd::Identity(order + 1, order + 1)).cwiseAbs().maxCoeff() <=
              1e-8);
    }
}

TEST_CASE("model of z^3 equals the polynomial space") {
    const int order = 24;
    auto m = model_basis(InnerFunctionSpec::power(3), order);
    auto p = poly_subspace(3, order);
    CHECK(m.dim() == 3);
    CHECK((projector(m) - projector(p)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("model space of a constant inner function is trivial") {
    auto m = model_basis(InnerFunctionSpec::constant(Complex(0.0, 1.0)), 16);
    CHECK(m.dim() == 0);
    CHECK(projector(m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("model space of z^n has dimension n") {
    for (int n : {1, 2, 5})
        CHECK(model_basis(InnerFunctionSpec::power(n), 40).dim() == n);
}

TEST_CASE("atomic model space hosts the zero-point model kernel") {
    const int order = 128;
    auto spec = atomic_spec();
    auto m = model_basis(spec, order);
    auto k0 = model_kernel(spec, Complex(0.0), order);
    // containment is approximate at finite order; the residual is small and
    // shrinks as the order grows
    double r128 = span_residual(m, k0);
    CHECK(r128 <= 0.12);
    double r256 = span_residual(model_basis(spec, 256), model_kernel(spec, 0.0, 256));
    CHECK(r256 <= r128 + 1e-3);
}

TEST_CASE("model kernel closed forms") {
    auto one = model_kernel(InnerFunctionSpec::power(3), Complex(0.0), 16);
    CHECK(std::abs(one.coeff(0) - 1.0) <= 1e-15);
    for (int n = 1; n <= 16; ++n) CHECK(std::abs(one.coeff(n)) <= 1e-15);

    // atomic: 1 - e^{-1} Theta
    const int order = 32;
    auto spec = atomic_spec();
    auto k0 = model_kernel(spec, Complex(0.0), order);
    auto theta = taylor_of_inner(spec, order);
    auto expect = subtract(TaylorSeries::constant(1.0, order),
                           scale(std::exp(-1.0), theta));
    for (int n = 0; n <= order; ++n)
        CHECK(std::abs(k0.coeff(n) - expect.coeff(n)) <= 1e-12);

    CHECK_THROWS_AS((void)model_kernel(spec, Complex(1.0), 8), std::domain_error);
}

TEST_CASE("model kernel reproduces inside the model span (exact case)") {
    const int order = 32;
    auto spec = InnerFunctionSpec::power(3);
    auto k0 = model_kernel(spec, Complex(0.0), order);
    CHECK(std::abs(inner_product(k0, k0) - eval(k0, Complex(0.0))) <= 1e-12);
    auto k_half = model_kernel(spec, Complex(0.4), order);
    CHECK(std::abs(inner_product(k0, k_half) - eval(k0, Complex(0.4))) <= 1e-12);
}

TEST_CASE("model kernels are orthogonal to the beurling basis") {
    const int order = 64;
    for (const auto& spec :
         {InnerFunctionSpec::power(2), InnerFunctionSpec(1.0, {Zero{Complex(0.5), 1}}, {})}) {
        auto b = beurling_basis(spec, order);
        auto k = model_kernel(spec, Complex(0.3), order);
        Eigen::VectorXcd v = embed(k);
        CHECK((b.vectors.adjoint() * v).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("poly subspace") {
    auto p1 = poly_subspace(1, 8);
    CHECK(p1.dim() == 1);
    CHECK(p1.vectors(0, 0) == Complex(1.0));
    auto p3 = poly_subspace(3, 8);
    CHECK(p3.dim() == 3);
    CHECK_THROWS_AS((void)poly_subspace(9, 8), std::invalid_argument);
    Eigen::MatrixXcd p = projector(poly_subspace(2, 4));
    CHECK(p(0, 0).real() == doctest::Approx(1.0));
    CHECK(p(1, 1).real() == doctest::Approx(1.0));
    CHECK(p(2, 2).real() == doctest::Approx(0.0));
    // idempotence and trace
    CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(p.trace().real() == doctest::Approx(2.0));
}

TEST_CASE("shifted model basis") {
    const int order = 24;
    auto s = shifted_model_basis(1, InnerFunctionSpec::power(2), order);
    CHECK(s.dim() == 2);
    Eigen::MatrixXcd p = projector(s);
    CHECK(p(0, 0).real() == doctest::Approx(0.0));
    CHECK(p(1, 1).real() == doctest::Approx(1.0));
    CHECK(p(2, 2).real() == doctest::Approx(1.0));
    CHECK(p(3, 3).real() == doctest::Approx(0.0));

    // shift preserves dimension and orthonormality
    auto inner = model_basis(InnerFunctionSpec::power(2), order - 1);
    CHECK(s.dim() == inner.dim());
    Eigen::MatrixXcd gram = s.vectors.adjoint() * s.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() <= 1e-12);

    // z^2 kappa_0^Theta lies in the shifted atomic model space
    const int big = 128;
    auto spec = atomic_spec();
    auto sm = shifted_model_basis(2, spec, big);
    auto k0 = model_kernel(spec, Complex(0.0), big - 2).shifted(0);
    TaylorSeries lifted = k0.extended(big).shifted(2);
    CHECK(span_residual(sm, lifted) <= 0.12);
}

TEST_CASE("direct sum decomposition for z^n times atomic") {
    const int order = 128;
    auto s = atomic_spec();
    for (int n : {1, 2}) {
        std::vector<Zero> zeros{Zero{Complex(0.0), n, false}};
        auto zn_s = InnerFunctionSpec(1.0, zeros, {Atom{0.0, 1.0}});
        auto a = poly_subspace(n, order);
        auto b = shifted_model_basis(n, s, order);
        auto c = model_basis(zn_s, order);
        auto check = direct_sum_check(a, b, c);
        CHECK(check.orthogonal);
        CHECK(check.spans_match);
        CHECK(check.defect <= 1e-6);
    }
}

TEST_CASE("direct sum check diagnostics") {
    auto p1 = poly_subspace(1, 8);
    auto bad = direct_sum_check(p1, p1, poly_subspace(2, 8));
    CHECK(!bad.orthogonal);
    // span{e_1} next to poly(1) against a too-small C
    auto e1_span = shifted_model_basis(1, InnerFunctionSpec::power(1), 8);
    auto too_small = direct_sum_check(p1, e1_span, poly_subspace(1, 8));
    CHECK(too_small.orthogonal);
    CHECK(!too_small.spans_match);
    CHECK(too_small.defect > 1e-6);
}

TEST_CASE("resolution error carries guidance") {
    auto heavy = InnerFunctionSpec::single_atom(0.0, 4.0);
    CHECK_THROWS_AS((void)beurling_basis(heavy, 8), resolution_error);
    try {
        (void)beurling_basis(heavy, 8);
    } catch (const resolution_error& e) {
        CHECK(e.order() == 8);
        CHECK(e.tail_energy() > 0.25);
        CHECK(std::string(e.what()).find("larger order") != std::string::npos);
    }
}
