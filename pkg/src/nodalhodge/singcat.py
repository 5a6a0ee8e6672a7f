"""Node verification and the catalog of worked example hypersurfaces."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import I as IMAG, ONE, GaussRat
from .polyring import HomoPoly, NotCriticalError, ProjPoint, evaluate, hessian_rank_at, partial


@dataclass(frozen=True)
class PointCheck:
    point: ProjPoint
    on_hypersurface: bool
    critical: bool
    hessian_rank: int | None
    is_node: bool

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "on_hypersurface": self.on_hypersurface,
            "critical": self.critical,
            "hessian_rank": self.hessian_rank,
            "is_node": self.is_node,
        }


@dataclass(frozen=True)
class NodeReport:
    checks: tuple

    @property
    def all_nodes(self) -> bool:
        return all(c.is_node for c in self.checks)

    @property
    def count(self) -> int:
        return len(self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.is_node]

    def to_json(self) -> dict:
        return {
            "all_nodes": self.all_nodes,
            "count": self.count,
            "points": [c.to_json() for c in self.checks],
        }


def verify_nodes(f: HomoPoly, points) -> NodeReport:
    """Check each point is an ordinary double point of ``f = 0``.

    A node lies on the hypersurface, kills every first partial, and has a
    Hessian of full rank n in an affine chart.
    """
    n = f.n_vars - 1
    grads = [partial(f, j) for j in range(f.n_vars)]
    checks = []
    for y in points:
        if not isinstance(y, ProjPoint):
            y = ProjPoint.of(y)
        on = not evaluate(f, y)
        crit = all(not evaluate(g, y) for g in grads)
        hrank = None
        if crit:
            try:
                hrank = hessian_rank_at(f, y)
            except NotCriticalError:
                hrank = None
        checks.append(PointCheck(y, on, crit, hrank, on and crit and hrank == n))
    return NodeReport(tuple(checks))


# --------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class Expectation:
    key: str
    value: object
    source: str
    hedged: bool = False

    def to_json(self) -> dict:
        return {"key": self.key, "value": self.value, "source": self.source, "hedged": self.hedged}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    hypersurface: object
    expected: tuple = field(default_factory=tuple)
    witness_p: int | None = None

    def expectation(self, key: str) -> Expectation:
        for e in self.expected:
            if e.key == key:
                return e
        raise KeyError(key)


class UnknownCatalogEntry(KeyError):
    pass


def _poly(n_vars: int, degree: int, terms) -> HomoPoly:
    out: dict = {}
    for e, c in terms:
        e = tuple(e)
        out[e] = out.get(e, GaussRat(0)) + GaussRat.coerce(c)
    return HomoPoly(n_vars, degree, out)


def _exp(n_vars: int, pairs) -> tuple:
    e = [0] * n_vars
    for j, a in pairs:
        e[j] += a
    return tuple(e)


def single_node_family(n: int, d: int) -> HomoPoly:
    """``sum x_i^d / d - x_0^(d-2) sum x_i^2 / 2`` (i >= 1), one node at (1:0:..:0)."""
    nv = n + 1
    terms = [(_exp(nv, [(i, d)]), Fraction(1, d)) for i in range(1, nv)]
    terms += [(_exp(nv, [(0, d - 2), (i, 2)]), Fraction(-1, 2)) for i in range(1, nv)]
    return _poly(nv, d, terms)


def _quartic(sym_coeff: int) -> HomoPoly:
    terms = [(_exp(4, [(i, 4)]), 1) for i in range(4)]
    terms += [(_exp(4, [(i, 2), (j, 2)]), sym_coeff) for i, j in itertools.combinations(range(4), 2)]
    return _poly(4, 4, terms)


def kummer_quartic() -> HomoPoly:
    return _quartic(-1)


def twelve_node_quartic() -> HomoPoly:
    return _quartic(-2)


def sextic_52() -> HomoPoly:
    s = _poly(4, 2, [(_exp(4, [(i, 2)]), 1) for i in range(4)])
    sixth = _poly(4, 6, [(_exp(4, [(i, 6)]), 1) for i in range(4)])
    return s * s * s - sixth


def quintic_one_node() -> HomoPoly:
    terms = [(_exp(5, [(0, 3), (1, 1), (4, 1)]), 1), (_exp(5, [(0, 3), (2, 1), (3, 1)]), 1)]
    terms += [(_exp(5, [(i, 5)]), Fraction(-1, 5)) for i in range(1, 5)]
    return _poly(5, 5, terms)


def coordinate_quartic() -> HomoPoly:
    terms = [(_exp(4, [(i, 2), (j, 2)]), Fraction(1, 2)) for i, j in itertools.combinations(range(4), 2)]
    return _poly(4, 4, terms)


def fermat(n: int, d: int) -> HomoPoly:
    return _poly(n + 1, d, [(_exp(n + 1, [(i, d)]), 1) for i in range(n + 1)])


def kummer_nodes() -> list:
    pts = []
    for k in range(4):
        for signs in itertools.product((1, -1), repeat=2):
            rest = [1, *signs]
            pts.append(rest[:k] + [0] + rest[k:])
    return pts


def twelve_nodes() -> list:
    pts = []
    for i, j in itertools.combinations(range(4), 2):
        for s in (1, -1):
            v = [0] * 4
            v[i], v[j] = 1, s
            pts.append(v)
    return pts


def sextic_52_nodes() -> list:
    pts = []
    for i in range(4):
        v = [0] * 4
        v[i] = 1
        pts.append(v)
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            others = [k for k in range(4) if k not in (i, j)]
            for s, t in itertools.product((1, -1), repeat=2):
                v = [GaussRat(0)] * 4
                v[i] = ONE
                v[others[0]] = IMAG * s
                v[others[1]] = IMAG * t
                pts.append(v)
    return pts


def coordinate_points(n_vars: int, count: int) -> list:
    pts = []
    for i in range(count):
        v = [0] * n_vars
        v[i] = 1
        pts.append(v)
    return pts


def _expect(key, value, source, hedged=False):
    return Expectation(key, value, source, hedged)


_FERMAT_RE = re.compile(r"^fermat-(\d+)-(\d+)$")

CATALOG_NAMES = (
    "thm1-d3-n5",
    "thm1-d4-n3",
    "ex38i",
    "ex38ii",
    "ex47i",
    "kummer",
    "ex47iii",
    "fermat-<n>-<d>",
)


def catalog_names() -> tuple:
    return CATALOG_NAMES


def catalog(name: str) -> CatalogEntry:
    """Build (and node-verify) a named example."""
    from .hodge import Hypersurface

    m = _FERMAT_RE.match(name)
    if m:
        n, d = int(m.group(1)), int(m.group(2))
        if n < 1 or d < 2:
            raise UnknownCatalogEntry(f"fermat needs n >= 1 and d >= 2, got {name!r}")
        h = Hypersurface(n, d, fermat(n, d), (), name=name)
        return CatalogEntry(name, f"smooth Fermat hypersurface of degree {d} in P^{n}", h,
                            (_expect("node_count", 0, "smooth control"),))

    if name == "thm1-d3-n5":
        h = Hypersurface(5, 3, single_node_family(5, 3), [[1, 0, 0, 0, 0, 0]], name=name)
        return CatalogEntry(name, "one-node cubic fourfold from the single-node family", h, (
            _expect("node_count", 1, "single-node family"),
            _expect("witness_rhs", 1, "C(6,3,6): coefficient of t^6 in (t+t^2)^6"),
            _expect("witness_strict", True, "single-node cubic fourfold, p = 2"),
        ), witness_p=2)
    if name == "thm1-d4-n3":
        h = Hypersurface(3, 4, single_node_family(3, 4), [[1, 0, 0, 0]], name=name)
        return CatalogEntry(name, "one-node quartic surface from the single-node family", h, (
            _expect("node_count", 1, "single-node family"),
            _expect("witness_lhs", 0, "single-node quartic surface, dim (I/J)_8"),
            _expect("witness_rhs", 1, "C(4,4,4)"),
            _expect("witness_strict", True, "single-node quartic surface, p = 1"),
        ), witness_p=1)
    if name == "ex38i":
        h = Hypersurface(4, 5, quintic_one_node(), [[1, 0, 0, 0, 0]], name=name)
        return CatalogEntry(name, "one-node quintic threefold x0^3(x1x4+x2x3) - sum x_i^5/5", h, (
            _expect("node_count", 1, "quintic with one node"),
            _expect("witness_lhs", 0, "one-node quintic threefold, dim (I/J)_15"),
            _expect("witness_rhs", 1, "C(5,5,5)"),
            _expect("witness_strict", True, "one-node quintic threefold, p = 1"),
        ), witness_p=1)
    if name == "ex38ii":
        h = Hypersurface(3, 4, coordinate_quartic(), coordinate_points(4, 4), name=name)
        return CatalogEntry(name, "quartic sum x_i^2 x_j^2 / 2 with the 4 coordinate nodes", h, (
            _expect("node_count", 4, "quartic with coordinate nodes"),
            _expect("witness_lhs", 0, "coordinate-node quartic, dim (I/J)_8"),
            _expect("witness_rhs", 1, "C(4,4,4)"),
            _expect("witness_strict", True, "coordinate-node quartic, p = 1"),
        ), witness_p=1)
    if name == "ex47i":
        h = Hypersurface(3, 4, twelve_node_quartic(), twelve_nodes(), name=name)
        return CatalogEntry(name, "quartic sum x_i^4 - 2 sum x_i^2 x_j^2 with 12 nodes", h, (
            _expect("node_count", 12, "12-node quartic"),
            _expect("beta_sizes_q2", [[48, 56], [12, 35]], "12-node quartic, evaluation matrix sizes"),
            _expect("veronese_q2", [2, 10], "12-node quartic, e and C(e+n,n)"),
            _expect("surjective_q2", True, "12-node quartic, surjectivity stated as likely", hedged=True),
            _expect("lines_agree_q2", True, "12-node quartic, both quotient descriptions agree"),
        ))
    if name == "kummer":
        h = Hypersurface(3, 4, kummer_quartic(), kummer_nodes(), name=name)
        return CatalogEntry(name, "Kummer quartic sum x_i^4 - sum x_i^2 x_j^2 with 16 nodes", h, (
            _expect("node_count", 16, "Kummer quartic"),
            _expect("I^(2)_8", 101, "Kummer quartic", hedged=True),
            _expect("(I^2)_8", 101, "Kummer quartic", hedged=True),
            _expect("(IJ)_8", 100, "Kummer quartic", hedged=True),
            _expect("quotient_q2", 1, "Kummer quartic, 101 - 100", hedged=True),
            _expect("ordinary_quotient_q2", 1, "Kummer quartic, 101 - 100", hedged=True),
            _expect("beta_sizes_q2", [[64, 56], [16, 35]], "Kummer quartic, evaluation matrix sizes"),
            _expect("surjective_q2", False, "Kummer quartic, 64 rows exceed 56 columns"),
            _expect("veronese_q2", [2, 10], "Kummer quartic, e and C(e+n,n)"),
            _expect("veronese_independent_q2", False, "Kummer quartic, 10 < 16"),
        ))
    if name == "ex47iii":
        h = Hypersurface(3, 6, sextic_52(), sextic_52_nodes(), name=name)
        return CatalogEntry(name, "sextic (sum x_i^2)^3 - sum x_i^6 with 52 nodes", h, (
            _expect("node_count", 52, "52-node sextic"),
            _expect("I^(2)_14", 472, "52-node sextic", hedged=True),
            _expect("(IJ)_14", 462, "52-node sextic", hedged=True),
            _expect("quotient_q2", 10, "52-node sextic, 472 - 462", hedged=True),
            _expect("beta_sizes_q2", [[208, 220], [52, 165]], "52-node sextic, evaluation matrix sizes"),
            _expect("veronese_q2", [4, 35], "52-node sextic, e and C(e+n,n)"),
            _expect("veronese_independent_q2", False, "52-node sextic, 35 < 52"),
        ))
    raise UnknownCatalogEntry(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}")
