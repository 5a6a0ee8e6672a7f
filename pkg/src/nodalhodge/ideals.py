"""Graded pieces of the ideals attached to a nodal hypersurface.

Every piece is a canonical :class:`~nodalhodge.linalg.Subspace` of R_k, the
degree ``k`` polynomials, in the coordinates of
``monomial_basis(n_vars, k)``.

``I`` is the radical ideal of the node set, ``I^(i)`` its symbolic powers
(polynomials vanishing to order ``i`` at every node), ``I^i`` its ordinary
powers and ``J`` the Jacobian ideal of ``f``.  By convention both kinds of
power equal R for ``i <= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

from .linalg import ExactMat, Subspace, rank, span, kernel_basis, vstack, matmul
from .polyring import HomoPoly, ProjPoint, monomial_basis, multiplication_rows, partial


@dataclass(frozen=True)
class NodeSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint.of(p) for p in self.points)
        if pts and len({p.n_vars for p in pts}) != 1:
            raise ValueError("points live in projective spaces of different dimension")
        if len(set(pts)) != len(pts):
            raise ValueError("node list repeats a projective point")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, coords: Iterable) -> "NodeSet":
        return cls(tuple(ProjPoint.of(c) for c in coords))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def linearly_independent(self) -> bool:
        """Whether the points are independent as vectors of C^{n+1}."""
        if not self.points:
            return True
        return rank(ExactMat.from_rows([p.coords for p in self.points])) == len(self.points)

    def to_json(self) -> list:
        return [p.to_json() for p in self.points]


@dataclass(frozen=True)
class GradedPiece:
    n_vars: int
    degree: int
    space: Subspace
    label: str

    def __post_init__(self):
        expected = len(monomial_basis(self.n_vars, self.degree))
        if self.space.ambient_dim != expected:
            raise ValueError(f"{self.label}: ambient {self.space.ambient_dim} != |R_k| = {expected}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    def contains(self, other: "GradedPiece") -> bool:
        self._check(other)
        return self.space.contains(other.space)

    def quotient_dim(self, other: "GradedPiece") -> int:
        self._check(other)
        return self.space.quotient_dim(other.space, f"{other.label} in {self.label}")

    def polynomials(self) -> list:
        return [HomoPoly.from_vector(self.n_vars, self.degree, v) for v in self.space.vectors()]

    def _check(self, other):
        if (self.n_vars, self.degree) != (other.n_vars, other.degree):
            raise ValueError(f"{self.label} and {other.label} live in different R_k")

    def __repr__(self):
        return f"GradedPiece({self.label}, dim={self.dim}/{self.ambient_dim})"


def _piece(n_vars: int, k: int, space: Subspace, label: str) -> GradedPiece:
    return GradedPiece(n_vars, k, space, label)


def _ambient(n_vars: int, k: int) -> int:
    return comb(k + n_vars - 1, n_vars - 1) if k >= 0 else 0


def ring_piece(n_vars: int, k: int) -> GradedPiece:
    return _piece(n_vars, k, Subspace.full(_ambient(n_vars, k)), f"R_{k}")


def zero_piece(n_vars: int, k: int, label: str) -> GradedPiece:
    return _piece(n_vars, k, Subspace.zero(_ambient(n_vars, k)), label)


def multiply_basis(g: HomoPoly, basis: ExactMat, k: int) -> ExactMat:
    """Rows ``g * b`` for the rows ``b`` of ``basis`` (degree ``k`` vectors)."""
    target = _ambient(g.n_vars, k + g.degree)
    if basis.rows == 0 or g.is_zero():
        return ExactMat.zeros(0, target)
    shift = ExactMat.from_sparse(multiplication_rows(g, k), target)
    return matmul(basis, shift)


# --------------------------------------------------------------------------
# J


@lru_cache(maxsize=None)
def jacobian_generators(f: HomoPoly) -> tuple:
    return tuple(partial(f, j) for j in range(f.n_vars))


@lru_cache(maxsize=None)
def jacobian_piece(f: HomoPoly, k: int) -> GradedPiece:
    """J_k, spanned by ``f_j * x^nu`` with ``|nu| = k - d + 1``."""
    label = f"J_{k}"
    src = k - f.degree + 1
    if src < 0:
        return zero_piece(f.n_vars, k, label)
    rows = []
    for fj in jacobian_generators(f):
        rows.extend(multiplication_rows(fj, src))
    return _piece(f.n_vars, k, span(ExactMat.from_sparse(rows, _ambient(f.n_vars, k)), _ambient(f.n_vars, k)), label)


# --------------------------------------------------------------------------
# symbolic powers


def _coord_pair(z):
    re, im = z.re, z.im
    re = re.numerator if re.denominator == 1 else re
    im = im.numerator if im.denominator == 1 else im
    return re, im


def _power_table(y: ProjPoint, k: int) -> list:
    table = []
    for z in y.coords:
        a, b = _coord_pair(z)
        pw = [(1, 0)]
        for _ in range(k):
            c, d = pw[-1]
            pw.append((c * a - d * b, c * b + d * a))
        table.append(pw)
    return table


def _falling(a: int, b: int) -> int:
    r = 1
    for t in range(b):
        r *= a - t
    return r


def evaluation_matrix(nodes: NodeSet, i: int, k: int, n_vars: int) -> ExactMat:
    """The map R_k -> (+)_y O_y / m_y^i as an M x N matrix.

    Row ``(y, mu)`` with ``|mu| = i - 1`` holds ``(d^mu x^nu)(y)`` for every
    monomial ``x^nu`` of degree ``k``; ``M = C(i-1+n, n) |nodes|``.
    """
    basis = monomial_basis(n_vars, k)
    mus = monomial_basis(n_vars, i - 1) if i >= 1 else ()
    re_rows, im_rows = [], []
    for y in nodes:
        pw = _power_table(y, k)
        for mu in mus:
            re_d, im_d = {}, {}
            for col, nu in enumerate(basis):
                val = (1, 0)
                for l, (a, b) in enumerate(zip(nu, mu)):
                    if a < b:
                        val = None
                        break
                    x, z = pw[l][a - b]
                    if not x and not z:
                        val = None
                        break
                    ff = _falling(a, b)
                    c, d = val
                    val = ((c * x - d * z) * ff, (c * z + d * x) * ff)
                if val is None:
                    continue
                if val[0]:
                    re_d[col] = Fraction(val[0])
                if val[1]:
                    im_d[col] = Fraction(val[1])
            re_rows.append(re_d)
            im_rows.append(im_d)
    return ExactMat._from_lanes(re_rows, im_rows, len(basis))


def beta_size(nodes: NodeSet, i: int, k: int, n_vars: int) -> tuple:
    """``(M, N)`` of the evaluation matrix."""
    n = n_vars - 1
    m = comb(i - 1 + n, n) * len(nodes) if i >= 1 else 0
    return m, _ambient(n_vars, k)


@lru_cache(maxsize=None)
def symbolic_piece(nodes: NodeSet, i: int, k: int, n_vars: int | None = None) -> GradedPiece:
    """I^(i)_k: polynomials whose partials of order ``i - 1`` vanish at every node.

    For k >= i - 1 Euler's identity makes the lower-order partials vanish too;
    below that the order ``i - 1`` partials vanish identically, and the piece
    is zero because a nonzero form of degree k < i has multiplicity <= k.
    """
    n_vars = _n_vars(nodes, n_vars)
    label = f"I^({i})_{k}"
    if k < 0:
        return zero_piece(n_vars, k, label)
    if i <= 0 or not len(nodes):
        return _piece(n_vars, k, Subspace.full(_ambient(n_vars, k)), label)
    if k < i - 1:
        return zero_piece(n_vars, k, label)
    beta = evaluation_matrix(nodes, i, k, n_vars)
    return _piece(n_vars, k, kernel_basis(beta), label)


def _n_vars(nodes: NodeSet, n_vars):
    if n_vars is not None:
        if len(nodes) and nodes.points[0].n_vars != n_vars:
            raise ValueError("n_vars disagrees with the node coordinates")
        return n_vars
    if not len(nodes):
        raise ValueError("n_vars is required for an empty node set")
    return nodes.points[0].n_vars


def beta_rank(nodes: NodeSet, i: int, k: int, n_vars: int | None = None) -> int:
    n_vars = _n_vars(nodes, n_vars)
    if i <= 0 or not len(nodes) or k < 0:
        return 0
    return rank(evaluation_matrix(nodes, i, k, n_vars))


# --------------------------------------------------------------------------
# ordinary powers


@lru_cache(maxsize=None)
def minimal_generators_up_to(nodes: NodeSet, k_max: int, n_vars: int | None = None) -> tuple:
    """Degreewise minimal generators ``(degree, poly)`` of I up to ``k_max``.

    In degree ``j`` the generators span a complement of ``R_1 * I_{j-1}``
    inside ``I_j``.
    """
    n_vars = _n_vars(nodes, n_vars)
    gens = []
    prev = None
    for j in range(k_max + 1):
        cur = symbolic_piece(nodes, 1, j, n_vars)
        if prev is None or prev.dim == 0:
            lower = Subspace.zero(cur.ambient_dim)
        else:
            shifted = [multiply_basis(HomoPoly.var(n_vars, l), prev.space.basis, j - 1) for l in range(n_vars)]
            lower = span(vstack(shifted, cur.ambient_dim), cur.ambient_dim)
        if cur.dim > lower.dim:
            for vec in _complement(cur.space, lower):
                gens.append((j, HomoPoly.from_vector(n_vars, j, vec)))
        prev = cur
    return tuple(gens)


def _complement(big: Subspace, small: Subspace) -> list:
    """Basis of a complement of ``small`` inside ``big``.

    Rows of ``big`` are reduced modulo the echelon basis of ``small``; the
    residues vanish on every pivot column of ``small`` and so meet it trivially.
    """
    if small.dim == 0:
        return big.vectors()
    residues = []
    small_rows = small.vectors()
    for vec in big.vectors():
        r = dict(vec)
        for p, srow in zip(small.pivots, small_rows):
            c = r.get(p)
            if c:
                for col, v in srow.items():
                    nv = r.get(col, 0) - c * v
                    if nv:
                        r[col] = nv
                    else:
                        r.pop(col, None)
        if r:
            residues.append(r)
    if not residues:
        return []
    return span(residues, big.ambient_dim).vectors()


@lru_cache(maxsize=None)
def ordinary_power_piece(nodes: NodeSet, i: int, k: int, n_vars: int | None = None) -> GradedPiece:
    """(I^i)_k = sum over generators g of g * (I^{i-1})_{k - deg g}."""
    n_vars = _n_vars(nodes, n_vars)
    label = f"(I^{i})_{k}"
    if k < 0:
        return zero_piece(n_vars, k, label)
    if i <= 0 or not len(nodes):
        return _piece(n_vars, k, Subspace.full(_ambient(n_vars, k)), label)
    ambient = _ambient(n_vars, k)
    parts = []
    for t, g in minimal_generators_up_to(nodes, k, n_vars):
        lower = ordinary_power_piece(nodes, i - 1, k - t, n_vars)
        if lower.dim:
            parts.append(multiply_basis(g, lower.space.basis, k - t))
    if not parts:
        return zero_piece(n_vars, k, label)
    rows = _dedup(vstack(parts, ambient))
    return _piece(n_vars, k, span(rows, ambient), label)


def _dedup(m: ExactMat) -> ExactMat:
    seen, keep = set(), []
    for r in range(m.rows):
        key = tuple(m.row(r).items())
        if key and key not in seen:
            seen.add(key)
            keep.append(dict(key))
    return ExactMat.from_sparse(keep, m.cols)


# --------------------------------------------------------------------------
# products with J


def _times_jacobian(f: HomoPoly, src: GradedPiece, k: int, label: str) -> GradedPiece:
    ambient = _ambient(f.n_vars, k)
    if src.dim == 0:
        return zero_piece(f.n_vars, k, label)
    parts = [multiply_basis(fj, src.space.basis, src.degree) for fj in jacobian_generators(f)]
    return _piece(f.n_vars, k, span(vstack(parts, ambient), ambient), label)


@lru_cache(maxsize=None)
def ideal_times_jacobian_piece(nodes: NodeSet, f: HomoPoly, i: int, k: int) -> GradedPiece:
    """(I^(i) J)_k = sum_j f_j * I^(i)_{k-d+1}; equals J_k for ``i <= 0``."""
    if i <= 0:
        piece = jacobian_piece(f, k)
        return GradedPiece(piece.n_vars, k, piece.space, f"(I^({i})J)_{k}")
    label = f"(I^({i})J)_{k}"
    src_k = k - f.degree + 1
    if src_k < 0:
        return zero_piece(f.n_vars, k, label)
    return _times_jacobian(f, symbolic_piece(nodes, i, src_k, f.n_vars), k, label)


@lru_cache(maxsize=None)
def ordinary_power_times_jacobian_piece(nodes: NodeSet, f: HomoPoly, i: int, k: int) -> GradedPiece:
    """(I^i J)_k, the denominator of the ordinary-power quotient."""
    if i <= 0:
        piece = jacobian_piece(f, k)
        return GradedPiece(piece.n_vars, k, piece.space, f"(I^{i}J)_{k}")
    label = f"(I^{i}J)_{k}"
    src_k = k - f.degree + 1
    if src_k < 0:
        return zero_piece(f.n_vars, k, label)
    return _times_jacobian(f, ordinary_power_piece(nodes, i, src_k, f.n_vars), k, label)


def clear_caches() -> None:
    """Drop every memoised graded piece (used to time cold computations)."""
    for fn in (jacobian_generators, jacobian_piece, symbolic_piece, minimal_generators_up_to,
               ordinary_power_piece, ideal_times_jacobian_piece, ordinary_power_times_jacobian_piece):
        fn.cache_clear()
