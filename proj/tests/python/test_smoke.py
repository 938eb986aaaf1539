"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import h2inv


def test_version():
    assert h2inv.__version__


def test_cesaro_rows_average():
    c = h2inv.cesaro_matrix(4)
    assert c.shape == (5, 5)
    assert np.allclose(c.sum(axis=1), 1.0)


def test_kernel_reproduces_polynomials():
    rng = np.random.default_rng(5)
    f = rng.normal(size=17) + 1j * rng.normal(size=17)
    w = 0.4 - 0.2j
    lhs = h2inv.inner_product(f, h2inv.kernel(w, 16))
    rhs = h2inv.eval_series(f, w)
    assert abs(lhs - rhs) < 1e-12


def test_series_ops():
    q = h2inv.divide(np.array([1.0, 0, 0], dtype=complex), np.array([1.0, -1.0, 0], dtype=complex))
    assert np.allclose(q, [1.0, 1.0, 1.0])
    e = h2inv.exp_series(np.array([0, 1.0, 0, 0], dtype=complex))
    assert np.allclose(e, [1.0, 1.0, 0.5, 1.0 / 6.0])


def test_spec_from_json_and_eval():
    spec = h2inv.InnerFunctionSpec.from_json('{"atoms": [{"angle_radians": 0.0, "mass": 1.0}]}')
    assert spec.zero_free
    assert abs(h2inv.inner_eval(spec, 0j) - math.exp(-1.0)) < 1e-15
    series = h2inv.taylor_of_inner(spec, 64)
    assert abs(series[0] - math.exp(-1.0)) < 1e-15
    assert np.sum(np.abs(series) ** 2) <= 1.0 + 1e-10


def test_spec_parse_error():
    with pytest.raises(ValueError):
        h2inv.InnerFunctionSpec.from_json('{"bogus": 1}')


def test_bases_and_compression():
    spec = h2inv.InnerFunctionSpec.power(3)
    model = h2inv.model_basis(spec, 32)
    assert model["dim"] == 3
    report = h2inv.compression_residual(model["vectors"], h2inv.affine_matrix(0.5, 32))
    assert report["verdict"] == "invariant"
    assert report["residual"] <= 1e-10


def test_schur_quotient_atomic():
    spec = h2inv.InnerFunctionSpec.single_atom(0.0, 1.0)
    report = h2inv.schur_quotient(spec, "affine", 0.5, order=128)
    assert report["verdict"] == "invariant"
    assert abs(report["sup_quotient"] - math.exp(-1.0)) < 1e-3


def test_multiplicity_flip():
    spec = h2inv.InnerFunctionSpec.phi_orbit(0.75 + 0j, 0.25, 30)
    good = h2inv.multiplicity_criterion(spec, 0.25)
    bad = h2inv.multiplicity_criterion(spec, 0.5)
    assert good["verdict"] == "invariant" and good["horizon_caveat"]
    assert bad["verdict"] == "non_invariant"


def test_orbit_ranks():
    ranks = h2inv.orbit_span_rank(h2inv.kernel(0.5 + 0j, 128), 0.5, 8)
    assert ranks[0] == 1
    assert ranks[1] >= 2
    assert all(b >= a for a, b in zip(ranks, ranks[1:]))


def test_cesaro_correspondence():
    spec = h2inv.InnerFunctionSpec.single_atom(0.0, 1.0)
    result = h2inv.cesaro_correspondence(spec, [math.log(2.0), 1.0], order=64)
    assert result["consistent"]
    assert all(e["verdict"] == "invariant" for e in result["semigroup_side"])


def test_classify():
    atomic = h2inv.InnerFunctionSpec.single_atom(0.0, 2.0)
    assert h2inv.classify_beurling(atomic, 0.5)["class"] == "atomic_at_one"
    orbit = h2inv.InnerFunctionSpec.phi_orbit(0j, 0.5, 40)
    assert h2inv.classify_beurling(orbit, 0.5)["class"] == "zeros_accumulating_at_one"


def test_enlarge():
    atomic = h2inv.InnerFunctionSpec.single_atom(0.0, 1.0)
    bigger = h2inv.enlarge_invariant(atomic, 0.5, 0j)
    d0 = h2inv.beurling_basis(atomic, 128)["dim"]
    d1 = h2inv.beurling_basis(bigger, 128)["dim"]
    assert d1 < d0


def test_resolution_error():
    heavy = h2inv.InnerFunctionSpec.single_atom(0.0, 64.0)
    with pytest.raises(RuntimeError):
        h2inv.beurling_basis(heavy, 16)
