import itertools

import pytest

from nodalhodge.exactnum import GaussRat
from nodalhodge.polyring import ProjPoint, euler_sum, evaluate
from nodalhodge.singcat import CATALOG_NAMES, UnknownCatalogEntry, catalog, fermat, verify_nodes

NAMED = [n for n in CATALOG_NAMES if "<" not in n]


@pytest.mark.parametrize("name", NAMED)
def test_entries_verify_and_count(name):
    entry = catalog(name)
    h = entry.hypersurface
    assert h.node_report.all_nodes
    assert entry.expectation("node_count").value == len(h.nodes) == h.node_report.count
    assert euler_sum(h.f) == h.f.scale(h.d)


def test_fermat_entries():
    h = catalog("fermat-4-3").hypersurface
    assert (h.n, h.d, len(h.nodes)) == (4, 3, 0)
    with pytest.raises(UnknownCatalogEntry):
        catalog("fermat-0-3")
    with pytest.raises(UnknownCatalogEntry):
        catalog("barth")


def test_smooth_points_are_not_critical():
    cubic = fermat(3, 3)
    rep = verify_nodes(cubic, [[1, -1, 0, 0], [0, 1, -1, 0]])
    for check in rep.checks:
        assert check.on_hypersurface and not check.critical and not check.is_node
    assert not rep.all_nodes and len(rep.failures()) == 2
    quartic = fermat(3, 4)
    rep = verify_nodes(quartic, [[1, GaussRat(0, 1), 0, 0], [1, 2, 3, GaussRat(1, 1)]])
    assert not any(c.critical for c in rep.checks)


def _symmetries(n_vars):
    for perm in itertools.permutations(range(n_vars)):
        for signs in itertools.product((1, -1), repeat=n_vars):
            yield perm, signs


@pytest.mark.parametrize("name", ["kummer", "ex47i", "ex47iii", "ex38ii"])
def test_node_lists_closed_under_symmetries(name):
    h = catalog(name).hypersurface
    pts = set(h.nodes)
    used = 0
    for perm, signs in _symmetries(h.n_vars):
        moved_f = {tuple(e[perm.index(j)] for j in range(h.n_vars)) for e in h.f.terms}
        if moved_f != set(h.f.terms):
            continue
        if any(s < 0 and any(e[j] % 2 for e in h.f.terms) for j, s in enumerate(signs)):
            continue
        used += 1
        for y in h.nodes:
            img = [y.coords[perm[j]] * signs[j] for j in range(h.n_vars)]
            assert ProjPoint.of(img) in pts
    assert used > 1


def test_nodes_lie_on_hypersurface():
    h = catalog("ex47iii").hypersurface
    assert all(not evaluate(h.f, y) for y in h.nodes)
    assert sum(1 for y in h.nodes if not all(c.is_real for c in y.coords)) == 48
