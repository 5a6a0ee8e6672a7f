import itertools
import random

import pytest

from nodalhodge import ideals
from nodalhodge.exactnum import I, GaussRat
from nodalhodge.ideals import NodeSet
from nodalhodge.linalg import span
from nodalhodge.polyring import HomoPoly, evaluate, iterated_partial, monomial_basis, mul
from nodalhodge.singcat import kummer_nodes, kummer_quartic


def coordinate_nodes(n_vars, count=None):
    count = n_vars if count is None else count
    return NodeSet.of([[int(a == b) for b in range(n_vars)] for a in range(count)])


def test_nodeset_normalises_and_rejects_duplicates():
    ns = NodeSet.of([[2, 0, 0], [0, I, I]])
    assert ns.points[1].coords == (GaussRat(0), GaussRat(1), GaussRat(1))
    with pytest.raises(ValueError):
        NodeSet.of([[1, 1, 0], [2, 2, 0]])
    with pytest.raises(ValueError):
        NodeSet.of([[1, 0], [1, 0, 0]])
    assert coordinate_nodes(3).linearly_independent()
    assert not NodeSet.of([[1, 0, 0], [0, 1, 0], [1, 1, 0]]).linearly_independent()


def test_beta_size_matches_matrix():
    nodes = NodeSet.of(kummer_nodes())
    for i, k in [(1, 2), (2, 5), (3, 6)]:
        m = ideals.evaluation_matrix(nodes, i, k, 4)
        assert (m.rows, m.cols) == ideals.beta_size(nodes, i, k, 4)


def _in_symbolic_power(g, nodes, i):
    return all(not evaluate(iterated_partial(g, mu), y)
               for y in nodes for mu in monomial_basis(g.n_vars, i - 1))


def test_symbolic_piece_against_pointwise_check():
    rng = random.Random(5)
    nodes = NodeSet.of([[1, 0, 0], [0, 1, 1], [1, I, 2]])
    for i, k in [(1, 2), (2, 3), (2, 4), (3, 5)]:
        piece = ideals.symbolic_piece(nodes, i, k)
        for g in piece.polynomials():
            assert _in_symbolic_power(g, nodes, i)
        # random polynomials outside the piece fail the pointwise test
        basis = monomial_basis(3, k)
        for _ in range(5):
            g = HomoPoly(3, k, {e: rng.randint(-3, 3) for e in basis})
            inside = piece.space.contains_vector(g.to_vector()) if not g.is_zero() else True
            assert inside == _in_symbolic_power(g, nodes, i)


def _ordinary_power_oracle(nodes, i, k, n_vars):
    """Span of all products g_1 ... g_i x^nu with g_j from bases of I_{a_j}."""
    vecs = []
    for degs in itertools.product(range(1, k + 1), repeat=i):
        if sum(degs) > k:
            continue
        factors = [ideals.symbolic_piece(nodes, 1, a, n_vars).polynomials() for a in degs]
        for combo in itertools.product(*factors):
            prod = combo[0]
            for g in combo[1:]:
                prod = mul(prod, g)
            for nu in monomial_basis(n_vars, k - sum(degs)):
                vecs.append(mul(prod, HomoPoly.monomial(nu)).to_vector())
    return span(vecs, len(monomial_basis(n_vars, k)))


@pytest.mark.parametrize("nodes, i, k", [
    (NodeSet.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 2, 3),
    (NodeSet.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 2, 4),
    (NodeSet.of([[1, 0, 0], [0, 1, 0], [1, 1, 1], [1, 2, 3]]), 2, 4),
    (NodeSet.of([[1, 0, 0], [1, 1, 0], [1, 2, 0]]), 2, 3),
    (NodeSet.of([[1, 0, 0, 0], [0, 1, 1, 0]]), 3, 4),
])
def test_ordinary_power_against_product_oracle(nodes, i, k):
    n_vars = nodes.points[0].n_vars
    assert ideals.ordinary_power_piece(nodes, i, k, n_vars).space == _ordinary_power_oracle(nodes, i, k, n_vars)


@pytest.mark.parametrize("n_vars", [3, 4, 5])
def test_coordinate_points_sharp_degree(n_vars):
    nodes = coordinate_nodes(n_vars)
    assert ideals.ordinary_power_piece(nodes, 2, 3, n_vars).dim == 0
    sym = ideals.symbolic_piece(nodes, 2, 3, n_vars)
    # squarefree cubic monomials vanish doubly at every coordinate point
    assert sym.dim == len([e for e in monomial_basis(n_vars, 3) if max(e) == 1])
    assert ideals.ordinary_power_piece(nodes, 2, 4, n_vars).space == ideals.symbolic_piece(nodes, 2, 4, n_vars).space


def test_jacobian_piece_spans_partials():
    f = kummer_quartic()
    j3 = ideals.jacobian_piece(f, 3)
    assert j3.dim == 4
    assert ideals.jacobian_piece(f, 1).dim == 0
    assert ideals.jacobian_piece(f, 8).ambient_dim == 165


def test_products_with_jacobian_are_nested():
    f = kummer_quartic()
    nodes = NodeSet.of(kummer_nodes())
    for i in (0, 1, 2):
        for k in range(3, 10):
            sym = ideals.symbolic_piece(nodes, i + 1, k, 4)
            assert sym.contains(ideals.ideal_times_jacobian_piece(nodes, f, i, k))
            assert ideals.ideal_times_jacobian_piece(nodes, f, i, k).contains(
                ideals.ordinary_power_times_jacobian_piece(nodes, f, i, k))
    assert ideals.ideal_times_jacobian_piece(nodes, f, 0, 6).space == ideals.jacobian_piece(f, 6).space


def test_empty_node_set_gives_whole_ring():
    empty = NodeSet(())
    assert ideals.symbolic_piece(empty, 2, 3, 3).dim == 10
    assert ideals.ordinary_power_piece(empty, 2, 3, 3).dim == 10
    with pytest.raises(ValueError):
        ideals.symbolic_piece(empty, 2, 3)


def test_negative_degree_is_zero():
    nodes = coordinate_nodes(3)
    assert ideals.symbolic_piece(nodes, 1, -1).dim == 0
    assert ideals.ring_piece(3, -2).dim == 0


def test_symbolic_power_below_multiplicity_is_zero():
    nodes = coordinate_nodes(3, 1)
    for i in range(1, 5):
        for k in range(0, i):
            assert ideals.symbolic_piece(nodes, i, k).dim == 0
    # x1^2 x2 has multiplicity 3 at (1:0:0) and lives in degree 3
    assert ideals.symbolic_piece(nodes, 3, 3).dim == 4
