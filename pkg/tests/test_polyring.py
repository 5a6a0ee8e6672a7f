from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nodalhodge.exactnum import I, GaussRat
from nodalhodge.polyring import (
    HomoPoly, NotCriticalError, PolyFormatError, ProjPoint, euler_sum, evaluate, hessian_rank_at,
    iterated_partial, monomial_basis, monomial_index, mul, multiplication_rows, partial,
)


def test_monomial_basis_order_and_size():
    assert monomial_basis(3, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    for n_vars in range(1, 6):
        for k in range(0, 7):
            assert len(monomial_basis(n_vars, k)) == comb(k + n_vars - 1, n_vars - 1)
    assert monomial_basis(4, -1) == ()
    assert monomial_index(3, 2)[(0, 1, 1)] == 4


def test_rejects_inhomogeneous_terms():
    with pytest.raises(PolyFormatError):
        HomoPoly(2, 2, {(1, 0): 1})
    with pytest.raises(PolyFormatError):
        HomoPoly(2, 1, {(1, 0, 0): 1})


def test_cancellation_drops_terms():
    x, y = HomoPoly.var(2, 0), HomoPoly.var(2, 1)
    assert (x + y - x - y).is_zero()
    assert (x * y - y * x).is_zero()


def test_partial_and_iterated_partial():
    x0, x1 = HomoPoly.var(2, 0), HomoPoly.var(2, 1)
    f = x0 ** 3 * x1 ** 2
    assert partial(f, 0) == (x0 ** 2 * x1 ** 2).scale(3)
    assert iterated_partial(f, (2, 1)) == (x0 * x1).scale(12)
    assert iterated_partial(f, (4, 0)).is_zero()


def test_evaluate_gaussian():
    f = HomoPoly(2, 2, {(2, 0): 1, (0, 2): 1})
    assert evaluate(f, [1, I]) == 0
    assert evaluate(f, ProjPoint.of([2, 0])) == 1


def test_projective_normalisation():
    p = ProjPoint.of([0, 2, 2 * I])
    assert p.coords == (GaussRat(0), GaussRat(1), I) and p.pivot == 1
    assert ProjPoint.of([0, 3, 3 * I]) == p
    with pytest.raises(ValueError):
        ProjPoint.of([0, 0])


def test_json_round_trip():
    f = HomoPoly(3, 2, {(2, 0, 0): GaussRat(1, 2), (0, 1, 1): -3})
    doc = f.to_json()
    assert doc["terms"][0] == {"coeff": "1+2i", "exp": [2, 0, 0]}
    assert HomoPoly.from_json(doc) == f
    with pytest.raises(PolyFormatError):
        HomoPoly.from_json({"n_vars": 2})


def test_str():
    f = HomoPoly(2, 2, {(2, 0): 1, (1, 1): -1, (0, 2): GaussRat(0, 2)})
    assert str(f) == "x0^2 - x0*x1 + (2i)*x1^2"


def test_multiplication_rows_match_mul():
    g = HomoPoly(3, 2, {(1, 1, 0): 2, (0, 0, 2): I})
    rows = multiplication_rows(g, 2)
    for nu, row in zip(monomial_basis(3, 2), rows):
        assert row == mul(g, HomoPoly.monomial(nu)).to_vector()


def test_hessian_rank():
    f = HomoPoly(3, 2, {(0, 2, 0): 1, (0, 0, 2): 1})  # cone over a conic: a node at (1:0:0)
    assert hessian_rank_at(f, [1, 0, 0]) == 2
    cusp = HomoPoly(3, 3, {(1, 2, 0): 1, (0, 0, 3): 1})
    assert hessian_rank_at(cusp, [1, 0, 0]) == 1
    with pytest.raises(NotCriticalError):
        hessian_rank_at(f, [0, 1, 0])


coeff = st.integers(-3, 3).map(GaussRat) | st.builds(GaussRat, st.integers(-2, 2), st.integers(-2, 2))


@st.composite
def polys(draw, n_vars=3, degree=None):
    d = draw(st.integers(0, 3)) if degree is None else degree
    basis = monomial_basis(n_vars, d)
    terms = {e: draw(coeff) for e in draw(st.lists(st.sampled_from(basis), max_size=5))}
    return HomoPoly(n_vars, d, terms)


@settings(max_examples=50)
@given(polys())
def test_euler_identity(f):
    assert euler_sum(f) == f.scale(f.degree)


@settings(max_examples=50)
@given(polys(), polys(), st.integers(0, 2))
def test_leibniz(f, g, j):
    assert partial(f * g, j) == partial(f, j) * g + f * partial(g, j)


@settings(max_examples=50)
@given(polys(), polys(), st.lists(coeff, min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(f, g, y):
    assert evaluate(f * g, y) == evaluate(f, y) * evaluate(g, y)
