"""Hodge-graded dimensions of the complement of a nodal hypersurface.

Conventions: ``Y = {f = 0}`` in P^n has degree ``d`` and only ordinary double
points; ``half_n = n // 2``; ``q = n - p``; the graded piece of interest sits
in degree ``k = (q + 1) d - n - 1``.

* ``q <= half_n``: the graded piece is (R/J)_k, or (I/J)_k when q = half_n.
* ``q > half_n``: the symbolic-power quotients (I^(q-h+1) / I^(q-h) J)_k and
  (I^(q-h+2) / (I^(q-h+2) & I^(q-h) J))_k with h = half_n.  These compute the
  graded piece when the evaluation maps onto the jets at the nodes are
  surjective in two specific degrees (see :func:`check_evaluation_surjectivity`);
  linear independence of the nodes after a Veronese embedding of degree
  ``half_n (d - 1) - p`` is a sufficient test for that.
* The same quotient with ordinary powers, :func:`ordinary_quotient_dim`, is the
  conjectural general answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil, comb
from typing import Optional

from . import ideals
from .ideals import GradedPiece, NodeSet
from .linalg import ContainmentError, ExactMat, reference_rank, sum_dim
from .polyring import HomoPoly, evaluate, monomial_basis, mul, partial
from .singcat import NodeReport, single_node_family, verify_nodes


class NodeVerificationError(ValueError):
    def __init__(self, report: NodeReport):
        bad = report.failures()
        where = ", ".join(str(c.point) for c in bad[:5])
        super().__init__(f"{len(bad)} of {report.count} points are not ordinary double points: {where}")
        self.report = report


class ConsistencyError(AssertionError):
    """Two computations that must agree did not."""


@dataclass(frozen=True)
class Hypersurface:
    n: int
    d: int
    f: HomoPoly
    nodes: NodeSet
    name: str = ""
    node_report: Optional[NodeReport] = field(default=None, compare=False, repr=False)

    def __init__(self, n, d, f, nodes, name="", verify=True):
        if not isinstance(nodes, NodeSet):
            nodes = NodeSet.of(nodes)
        if f.n_vars != n + 1 or f.degree != d:
            raise ValueError(f"f must be homogeneous of degree {d} in {n + 1} variables")
        if d < 2:
            raise ValueError("degree must be at least 2")
        if len(nodes) and nodes.points[0].n_vars != n + 1:
            raise ValueError("node coordinates do not match P^n")
        report = verify_nodes(f, nodes) if verify else None
        if report is not None and not report.all_nodes:
            raise NodeVerificationError(report)
        for k, v in (("n", n), ("d", d), ("f", f), ("nodes", nodes), ("name", name), ("node_report", report)):
            object.__setattr__(self, k, v)

    @property
    def half_n(self) -> int:
        return self.n // 2

    @property
    def n_vars(self) -> int:
        return self.n + 1

    def degree_for(self, q: int) -> int:
        return (q + 1) * self.d - self.n - 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "d": self.d,
            "polynomial": self.f.to_json(),
            "nodes": self.nodes.to_json(),
        }


# --------------------------------------------------------------------------
# Fermat / Griffiths numbers


@lru_cache(maxsize=None)
def fermat_milnor_row(n_vars: int, d: int) -> tuple:
    """Coefficients of ``(t + ... + t^(d-1))^n_vars``, index = power of t."""
    if n_vars < 1 or d < 2:
        raise ValueError("need n_vars >= 1 and d >= 2")
    row = [1]
    for _ in range(n_vars):
        nxt = [0] * (len(row) + d - 1)
        for a, c in enumerate(row):
            if c:
                for b in range(1, d):
                    nxt[a + b] += c
        row = nxt
    return tuple(row)


def fermat_milnor_coeff(n_vars: int, d: int, i: int) -> int:
    """Coefficient of t^i in ``(t + ... + t^(d-1))^n_vars``; 0 off the support."""
    row = fermat_milnor_row(n_vars, d)
    return row[i] if 0 <= i < len(row) else 0


def griffiths_smooth_dim(n: int, d: int, p: int) -> int:
    """Graded Hodge number of a smooth degree-``d`` hypersurface complement."""
    return fermat_milnor_coeff(n + 1, d, p * d)


# --------------------------------------------------------------------------
# low q


def milnor_dim(f: HomoPoly, k: int) -> int:
    """dim (R/J)_k."""
    if k < 0:
        return 0
    return ideals.ring_piece(f.n_vars, k).quotient_dim(ideals.jacobian_piece(f, k))


def hodge_graded_dim_low(h: Hypersurface, q: int) -> int:
    """(R/J)_k for q < n//2, (I/J)_k for q = n//2, with k = (q+1)d - n - 1."""
    if not 0 <= q <= h.half_n:
        raise ValueError(f"q must lie in [0, {h.half_n}]")
    k = h.degree_for(q)
    if k < 0:
        return 0
    jac = ideals.jacobian_piece(h.f, k)
    if q < h.half_n:
        return ideals.ring_piece(h.n_vars, k).quotient_dim(jac)
    return ideals.symbolic_piece(h.nodes, 1, k, h.n_vars).quotient_dim(jac)


# --------------------------------------------------------------------------
# evaluation surjectivity and Veronese independence


@dataclass(frozen=True)
class EvaluationCheck:
    k: int
    i: int
    rows: int
    cols: int
    rank: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.rows

    def to_json(self) -> dict:
        return {"k": self.k, "i": self.i, "M": self.rows, "N": self.cols,
                "rank": self.rank, "surjective": self.surjective}


@dataclass(frozen=True)
class SurjectivityReport:
    q: int
    checks: tuple

    @property
    def overall(self) -> bool:
        return all(c.surjective for c in self.checks)

    def sizes(self) -> list:
        return [[c.rows, c.cols] for c in self.checks]

    def to_json(self) -> dict:
        return {"q": self.q, "pairs": [c.to_json() for c in self.checks], "overall": self.overall}


def check_evaluation_surjectivity(h: Hypersurface, q: int) -> SurjectivityReport:
    """Surjectivity of R_k -> jets of order < i at the nodes for the two pairs
    (k, i) = (qd - n, q - h + 1) and (qd - n - 1, q - h), h = n // 2."""
    if q <= h.half_n:
        raise ValueError("surjectivity test applies to q > n//2 only")
    pairs = ((q * h.d - h.n, q - h.half_n + 1), (q * h.d - h.n - 1, q - h.half_n))
    checks = []
    for k, i in pairs:
        m_rows, n_cols = ideals.beta_size(h.nodes, i, k, h.n_vars)
        r = ideals.beta_rank(h.nodes, i, k, h.n_vars)
        checks.append(EvaluationCheck(k, i, m_rows, n_cols, r))
    return SurjectivityReport(q, tuple(checks))


@dataclass(frozen=True)
class VeroneseReport:
    p: int
    e: int
    veronese_cols: int
    node_count: int
    rank: int

    @property
    def independent(self) -> bool:
        return self.rank == self.node_count

    @property
    def count_ok(self) -> bool:
        return self.node_count <= self.veronese_cols

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "veronese_cols": self.veronese_cols,
                "node_count": self.node_count, "rank": self.rank,
                "count_ok": self.count_ok, "independent": self.independent}


def check_veronese_independence(h: Hypersurface, p: int) -> VeroneseReport:
    """Independence of the nodes' images under the degree e = (n//2)(d-1) - p Veronese map."""
    e = h.half_n * (h.d - 1) - p
    cols = comb(e + h.n, h.n) if e >= 0 else 0
    if e < 0 or not len(h.nodes):
        r = 0
    else:
        r = ideals.beta_rank(h.nodes, 1, e, h.n_vars)
    return VeroneseReport(p, e, cols, len(h.nodes), r)


# --------------------------------------------------------------------------
# q > n//2


def _guarded(num: GradedPiece, den: GradedPiece) -> int:
    try:
        return num.quotient_dim(den)
    except ContainmentError as exc:
        raise ContainmentError(f"{den.label} is not contained in {num.label}") from exc


@dataclass(frozen=True)
class SymbolicQuotient:
    q: int
    k: int
    numerator_dim: int
    denominator_dim: int
    quotient_dim: int
    deep_numerator_dim: int
    intersection_dim: int
    intersection_quotient_dim: int
    surjectivity: SurjectivityReport

    @property
    def lines_agree(self) -> bool:
        return self.quotient_dim == self.intersection_quotient_dim

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "numerator_dim": self.numerator_dim,
            "denominator_dim": self.denominator_dim,
            "line1_dim": self.quotient_dim,
            "deep_numerator_dim": self.deep_numerator_dim,
            "intersection_dim": self.intersection_dim,
            "line2_dim": self.intersection_quotient_dim,
            "lines_agree": self.lines_agree,
            "evaluation_surjectivity": self.surjectivity.to_json(),
        }


def symbolic_quotient_dims(h: Hypersurface, q: int) -> SymbolicQuotient:
    """Both symbolic-power quotients in degree (q+1)d - n - 1 for q > n//2.

    When the surjectivity test passes the two dimensions must coincide; a
    mismatch raises :class:`ConsistencyError`.
    """
    if not h.half_n < q <= h.n:
        raise ValueError(f"q must lie in ({h.half_n}, {h.n}]")
    k = h.degree_for(q)
    i = q - h.half_n
    num = ideals.symbolic_piece(h.nodes, i + 1, k, h.n_vars)
    den = ideals.ideal_times_jacobian_piece(h.nodes, h.f, i, k)
    line1 = _guarded(num, den)
    deep = ideals.symbolic_piece(h.nodes, i + 2, k, h.n_vars)
    inter = deep.dim + den.dim - sum_dim(deep.space, den.space)
    line2 = deep.dim - inter
    surj = check_evaluation_surjectivity(h, q)
    result = SymbolicQuotient(q, k, num.dim, den.dim, line1, deep.dim, inter, line2, surj)
    if surj.overall and not result.lines_agree:
        raise ConsistencyError(f"q={q}: quotients {line1} and {line2} differ although the evaluation maps are onto")
    return result


def ordinary_quotient_dim(h: Hypersurface, q: int) -> int:
    """dim (I^(q-h+1) / I^(q-h) J)_k with ordinary powers, h = n//2."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    k = h.degree_for(q)
    if k < 0:
        return 0
    i = q - h.half_n
    num = ideals.ordinary_power_piece(h.nodes, i + 1, k, h.n_vars)
    den = ideals.ordinary_power_times_jacobian_piece(h.nodes, h.f, i, k)
    return _guarded(num, den)


# --------------------------------------------------------------------------
# node bounds


@dataclass(frozen=True)
class NodeBounds:
    n: int
    d: int
    odd_bound: Optional[int]
    varchenko_rhs: int
    varchenko_sum: int

    @property
    def sum_matches_rhs(self) -> bool:
        return self.varchenko_sum == self.varchenko_rhs

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "odd_bound": self.odd_bound,
                "varchenko_rhs": self.varchenko_rhs, "varchenko_sum": self.varchenko_sum,
                "sum_matches_rhs": self.sum_matches_rhs}


def node_bounds(n: int, d: int) -> NodeBounds:
    """Upper bounds for the number of nodes of a degree-``d`` hypersurface in P^n.

    The sum over i in ((n-2)/2 + 1, nd/2] of C(n,d,i) and the closed form
    C(n+1,d,[nd/2]+1) are evaluated separately; they need not agree.
    """
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    half = n // 2
    odd = fermat_milnor_coeff(n + 1, d, (half + 1) * d) if n % 2 else None
    rhs = fermat_milnor_coeff(n + 1, d, (n * d) // 2 + 1)
    # (n-2)/2 + 1 < i  <=>  2i > n ;  i <= nd/2  <=>  2i <= nd
    total = sum(fermat_milnor_coeff(n, d, i) for i in range(0, n * d + 1) if 2 * i > n and 2 * i <= n * d)
    return NodeBounds(n, d, odd, rhs, total)


# --------------------------------------------------------------------------
# F != P surrogate


@dataclass(frozen=True)
class SurrogateInequality:
    name: str
    n: int
    d: int
    p: int
    q: int
    r: int
    lhs: int
    lhs_oracle: int
    rhs: int

    @property
    def strict(self) -> bool:
        return self.lhs < self.rhs

    @property
    def routes_agree(self) -> bool:
        return self.lhs == self.lhs_oracle

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "d": self.d, "p": self.p, "q": self.q, "r": self.r,
                "lhs": self.lhs, "lhs_oracle": self.lhs_oracle, "rhs": self.rhs,
                "strict": self.strict, "routes_agree": self.routes_agree,
                "note": "decidable surrogate dim (I/J)_r < C(n+1,d,pd), not the cohomological statement"}


def brute_force_node_quotient(f: HomoPoly, nodes: NodeSet, r: int) -> int:
    """dim (I/J)_r from raw spanning sets over the full monomial basis.

    Shares nothing with the graded-piece pipeline: products come from
    polynomial multiplication, evaluations from :func:`evaluate`, ranks from
    the Gaussian-integer reference eliminator.
    """
    n_vars = f.n_vars
    basis = monomial_basis(n_vars, r)
    monos = [HomoPoly.monomial(nu) for nu in basis]
    eval_rows = [{c: evaluate(mono, y) for c, mono in enumerate(monos) if evaluate(mono, y)} for y in nodes]
    dim_i = len(basis) - reference_rank(eval_rows)
    grads = [partial(f, j) for j in range(n_vars)]
    jac_rows = []
    for g in grads:
        for nu in monomial_basis(n_vars, r - f.degree + 1):
            prod = mul(g, HomoPoly.monomial(nu))
            if any(evaluate(prod, y) for y in nodes):
                raise ContainmentError("a Jacobian generator does not vanish at a node")
            jac_rows.append(prod.to_vector())
    return dim_i - reference_rank(jac_rows)


def pole_order_surrogate(h: Hypersurface, p: int) -> SurrogateInequality:
    """Compare dim (I/J)_r with C(n+1, d, pd), r = (n-p+1)d - n - 1.

    A strict inequality means the Hodge and pole order filtrations differ
    in this degree for this hypersurface.
    """
    q = h.n - p
    r = h.degree_for(q)
    lhs = _guarded(ideals.symbolic_piece(h.nodes, 1, r, h.n_vars), ideals.jacobian_piece(h.f, r))
    oracle = brute_force_node_quotient(h.f, h.nodes, r)
    result = SurrogateInequality(h.name, h.n, h.d, p, q, r, lhs, oracle, fermat_milnor_coeff(h.n + 1, h.d, p * h.d))
    if not result.routes_agree:
        raise ConsistencyError(f"dim (I/J)_{r}: pipeline {lhs} vs brute force {oracle}")
    return result


def witness_p_range(n: int, d: int) -> range:
    """Admissible p for the single-node family: (n+1)/d <= p < n - n//2."""
    return range(ceil((n + 1) / d), n - n // 2)


def single_node_witness(n: int, d: int, p: Optional[int] = None) -> SurrogateInequality:
    """The one-node hypersurface ``sum x_i^d/d - x_0^(d-2) sum x_i^2/2`` and its
    surrogate inequality; only d = 3 with n >= 5 or d = 4 with n >= 3."""
    if not ((d == 3 and n >= 5) or (d == 4 and n >= 3)):
        raise ValueError(f"(n, d) = ({n}, {d}) is outside the single-node family's range")
    allowed = witness_p_range(n, d)
    if p is None:
        p = allowed.start
    if p not in allowed:
        raise ValueError(f"p = {p} outside [{allowed.start}, {allowed.stop})")
    point = [1] + [0] * n
    h = Hypersurface(n, d, single_node_family(n, d), [point], name=f"single-node n={n} d={d}")
    return pole_order_surrogate(h, p)


# --------------------------------------------------------------------------
# Kodaira-Spencer multiplication


@dataclass(frozen=True)
class KodairaSpencerReport:
    q: int
    source_dim: int
    target_dim: int
    rank: int
    numerator_ok: bool
    denominator_ok: bool
    surjectivity: tuple

    def to_json(self) -> dict:
        return {"q": self.q, "source_dim": self.source_dim, "target_dim": self.target_dim,
                "rank": self.rank, "numerator_ok": self.numerator_ok,
                "denominator_ok": self.denominator_ok,
                "evaluation_surjectivity": [s.to_json() for s in self.surjectivity]}


class NotInNodeIdeal(ValueError):
    pass


def kodaira_spencer_rank(h: Hypersurface, q: int, g: HomoPoly) -> KodairaSpencerReport:
    """Rank of multiplication by ``-q g`` from the degree qd-n-1 quotient to the
    degree (q+1)d-n-1 quotient, for a direction ``g`` that keeps the nodes fixed
    (g vanishes at every node)."""
    if q <= h.half_n:
        raise ValueError("needs q > n//2")
    if g.n_vars != h.n_vars or (g.degree != h.d and not g.is_zero()):
        raise ValueError("g must have the degree of f")
    if any(evaluate(g, y) for y in h.nodes):
        raise NotInNodeIdeal("g does not vanish at every node")
    i = q - h.half_n
    k_src, k_tgt = h.degree_for(q - 1), h.degree_for(q)
    src_num = ideals.symbolic_piece(h.nodes, i, k_src, h.n_vars)
    src_den = ideals.ideal_times_jacobian_piece(h.nodes, h.f, i - 1, k_src)
    tgt_num = ideals.symbolic_piece(h.nodes, i + 1, k_tgt, h.n_vars)
    tgt_den = ideals.ideal_times_jacobian_piece(h.nodes, h.f, i, k_tgt)
    source_dim = _guarded(src_num, src_den)
    target_dim = _guarded(tgt_num, tgt_den)
    direction = g.scale(-q)
    img_num = ideals.multiply_basis(direction, src_num.space.basis, k_src) if k_src >= 0 else None
    img_den = ideals.multiply_basis(direction, src_den.space.basis, k_src) if k_src >= 0 else None
    num_ok = _rows_inside(tgt_num, img_num)
    den_ok = _rows_inside(tgt_den, img_den)
    if not (num_ok and den_ok):
        raise ContainmentError(f"multiplication by g is not well defined on the quotients at q={q}")
    if img_num is None or img_num.rows == 0:
        rk = 0
    else:
        from .linalg import rank, vstack
        rk = rank(vstack([tgt_den.space.basis, img_num])) - tgt_den.dim
    surj = [check_evaluation_surjectivity(h, q)]
    if q - 1 > h.half_n:
        surj.append(check_evaluation_surjectivity(h, q - 1))
    return KodairaSpencerReport(q, source_dim, target_dim, rk, num_ok, den_ok, tuple(surj))


def _rows_inside(piece: GradedPiece, rows: Optional[ExactMat]) -> bool:
    if rows is None or rows.rows == 0:
        return True
    from .linalg import rank, vstack
    return rank(vstack([piece.space.basis, rows])) == piece.dim


# --------------------------------------------------------------------------
# full report


def analyze(h: Hypersurface, qs) -> dict:
    """Every dimension and test for each q in ``qs``, as plain JSON data."""
    records = []
    for q in qs:
        k = h.degree_for(q)
        rec: dict = {"q": q, "p": h.n - q, "k": k}
        if q < 0 or q > h.n:
            raise ValueError(f"q = {q} outside [0, {h.n}]")
        if q <= h.half_n:
            rec["regime"] = "low"
            rec["graded_dim"] = hodge_graded_dim_low(h, q)
            rec["provenance"] = {"graded_dim": "hodge_graded_dim_low"}
        else:
            rec["regime"] = "high"
            sq = symbolic_quotient_dims(h, q)
            rec.update(sq.to_json())
            rec["veronese"] = check_veronese_independence(h, h.n - q).to_json()
            rec["provenance"] = {
                "line1_dim": "symbolic_quotient_dims",
                "line2_dim": "symbolic_quotient_dims",
                "evaluation_surjectivity": "check_evaluation_surjectivity",
                "veronese": "check_veronese_independence",
                "ordinary_quotient_dim": "ordinary_quotient_dim",
            }
        rec["ordinary_quotient_dim"] = ordinary_quotient_dim(h, q)
        rec.setdefault("provenance", {})["ordinary_quotient_dim"] = "ordinary_quotient_dim"
        rec["smooth_value"] = griffiths_smooth_dim(h.n, h.d, h.n - q) if h.n - q >= 0 else 0
        records.append(rec)
    return {
        "hypersurface": h.to_json(),
        "half_n": h.half_n,
        "node_count": len(h.nodes),
        "nodes_verified": h.node_report.all_nodes if h.node_report is not None else None,
        "records": records,
    }
