"""Homogeneous polynomials in ``n_vars`` variables over Q(i).

Monomials are exponent tuples (``ExpVec``).  Within one degree they are
ordered lexicographically with ``x_0 > x_1 > ... > x_n``; this order fixes
every matrix layout in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .exactnum import ONE, ZERO, GaussRat, format_gauss, parse_gauss

ExpVec = tuple  # tuple[int, ...] of length n_vars


class NotCriticalError(ValueError):
    """The point is not a critical point of the polynomial."""


class PolyFormatError(ValueError):
    """Malformed polynomial literal."""


@lru_cache(maxsize=None)
def monomial_basis(n_vars: int, k: int) -> tuple:
    """All exponent vectors of degree ``k``, x_0 first (graded lex)."""
    if n_vars < 1:
        raise ValueError("need at least one variable")
    if k < 0:
        return ()
    if n_vars == 1:
        return ((k,),)
    out = []
    for a in range(k, -1, -1):
        for rest in monomial_basis(n_vars - 1, k - a):
            out.append((a,) + rest)
    assert len(out) == comb(k + n_vars - 1, n_vars - 1)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, k: int) -> dict:
    return {m: pos for pos, m in enumerate(monomial_basis(n_vars, k))}


def _falling(a: int, b: int) -> int:
    r = 1
    for t in range(b):
        r *= a - t
    return r


@dataclass(frozen=True)
class HomoPoly:
    n_vars: int
    degree: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n_vars:
                raise PolyFormatError(f"exponent {e} has wrong length for {self.n_vars} variables")
            if min(e) < 0 or sum(e) != self.degree:
                raise PolyFormatError(f"exponent {e} is not of degree {self.degree}")
            c = GaussRat.coerce(c)
            if c:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int, degree: int) -> "HomoPoly":
        return cls(n_vars, degree, {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=ONE) -> "HomoPoly":
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: coeff})

    @classmethod
    def var(cls, n_vars: int, j: int) -> "HomoPoly":
        e = [0] * n_vars
        e[j] = 1
        return cls.monomial(e)

    @classmethod
    def constant(cls, n_vars: int, c) -> "HomoPoly":
        return cls(n_vars, 0, {(0,) * n_vars: c})

    @classmethod
    def from_vector(cls, n_vars: int, k: int, vec: Mapping) -> "HomoPoly":
        """Inverse of :meth:`to_vector` (``vec`` maps basis positions to values)."""
        basis = monomial_basis(n_vars, k)
        return cls(n_vars, k, {basis[c]: v for c, v in vec.items()})

    def __hash__(self):
        return hash((self.n_vars, self.degree, frozenset(self.terms.items())))

    # -- basics -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, e) -> GaussRat:
        return self.terms.get(tuple(e), ZERO)

    def sorted_terms(self) -> list:
        idx = monomial_index(self.n_vars, self.degree)
        return sorted(self.terms.items(), key=lambda t: idx[t[0]])

    def to_vector(self) -> dict:
        """Coefficients keyed by position in ``monomial_basis(n_vars, degree)``."""
        idx = monomial_index(self.n_vars, self.degree)
        return {idx[e]: c for e, c in self.terms.items()}

    def _check_same_ring(self, other: "HomoPoly"):
        if self.n_vars != other.n_vars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "HomoPoly") -> "HomoPoly":
        self._check_same_ring(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add homogeneous polynomials of different degrees")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return HomoPoly(self.n_vars, self.degree, out)

    def __neg__(self) -> "HomoPoly":
        return HomoPoly(self.n_vars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HomoPoly") -> "HomoPoly":
        return self + (-other)

    def scale(self, c) -> "HomoPoly":
        c = GaussRat.coerce(c)
        return HomoPoly(self.n_vars, self.degree, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomoPoly):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "HomoPoly":
        out = HomoPoly.constant(self.n_vars, 1)
        for _ in range(e):
            out = out * self
        return out

    def partial(self, j: int) -> "HomoPoly":
        return partial(self, j)

    def evaluate(self, y) -> GaussRat:
        return evaluate(self, y)

    # -- text / json --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{j}" if a == 1 else f"x{j}^{a}" for j, a in enumerate(e) if a
            )
            cs = format_gauss(c)
            if not mono:
                parts.append(f"({cs})" if ("+" in cs[1:] or "-" in cs[1:]) else cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            elif c.is_real:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "degree": self.degree,
            "terms": [{"coeff": format_gauss(c), "exp": list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "HomoPoly":
        try:
            n_vars = int(doc["n_vars"])
            degree = int(doc["degree"])
            terms: dict = {}
            for t in doc["terms"]:
                e = tuple(int(x) for x in t["exp"])
                c = parse_gauss(str(t["coeff"]))
                terms[e] = terms.get(e, ZERO) + c
        except (KeyError, TypeError) as exc:
            raise PolyFormatError(f"bad polynomial literal: {exc}") from exc
        return cls(n_vars, degree, terms)


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^n, normalised so its first nonzero coordinate is 1."""

    coords: tuple
    pivot: int

    @classmethod
    def of(cls, coords: Iterable) -> "ProjPoint":
        cs = [GaussRat.coerce(c) for c in coords]
        for pivot, c in enumerate(cs):
            if c:
                break
        else:
            raise ValueError("the zero vector is not a projective point")
        inv = cs[pivot].invert()
        return cls(tuple(c * inv for c in cs), pivot)

    @property
    def n_vars(self) -> int:
        return len(self.coords)

    def __str__(self):
        return "(" + ":".join(format_gauss(c) for c in self.coords) + ")"

    def to_json(self) -> list:
        return [format_gauss(c) for c in self.coords]


def partial(p: HomoPoly, j: int) -> HomoPoly:
    if not 0 <= j < p.n_vars:
        raise IndexError(f"no variable x{j} in {p.n_vars} variables")
    out = {}
    for e, c in p.terms.items():
        if e[j]:
            ne = list(e)
            ne[j] -= 1
            out[tuple(ne)] = c * e[j]
    return HomoPoly(p.n_vars, p.degree - 1, out)


def iterated_partial(p: HomoPoly, mu: Sequence[int]) -> HomoPoly:
    """Apply ``prod_i d_i^{mu_i}`` in one pass using falling factorials."""
    mu = tuple(mu)
    if len(mu) != p.n_vars:
        raise ValueError("multi-index length does not match the ring")
    out = {}
    for e, c in p.terms.items():
        if all(a >= b for a, b in zip(e, mu)):
            factor = 1
            for a, b in zip(e, mu):
                factor *= _falling(a, b)
            out[tuple(a - b for a, b in zip(e, mu))] = c * factor
    return HomoPoly(p.n_vars, p.degree - sum(mu), out)


def evaluate(p: HomoPoly, y) -> GaussRat:
    coords = y.coords if isinstance(y, ProjPoint) else tuple(GaussRat.coerce(c) for c in y)
    if len(coords) != p.n_vars:
        raise ValueError("point and polynomial dimensions differ")
    total = ZERO
    for e, c in p.terms.items():
        v = c
        for x, a in zip(coords, e):
            if a:
                v = v * x**a
                if not v:
                    break
        total = total + v
    return total


def mul(p: HomoPoly, q: HomoPoly) -> HomoPoly:
    p._check_same_ring(q)
    out: dict = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, ZERO) + c1 * c2
    return HomoPoly(p.n_vars, p.degree + q.degree, out)


def gradient(p: HomoPoly) -> list:
    return [partial(p, j) for j in range(p.n_vars)]


def euler_sum(p: HomoPoly) -> HomoPoly:
    """``sum_j x_j * df/dx_j``; equals ``degree * p`` for homogeneous ``p``."""
    total = HomoPoly.zero(p.n_vars, p.degree)
    for j in range(p.n_vars):
        total = total + HomoPoly.var(p.n_vars, j) * partial(p, j)
    return total


def multiplication_rows(p: HomoPoly, k: int) -> list:
    """Rows ``p * x^nu`` for ``nu`` in ``monomial_basis(n_vars, k)``.

    Each row is a sparse dict from positions in the degree ``k + deg p``
    basis to GaussRat coefficients.
    """
    if k < 0:
        return []
    target = monomial_index(p.n_vars, k + p.degree)
    terms = list(p.terms.items())
    rows = []
    for nu in monomial_basis(p.n_vars, k):
        rows.append({target[tuple(a + b for a, b in zip(e, nu))]: c for e, c in terms})
    return rows


def hessian_rank_at(f: HomoPoly, y: ProjPoint) -> int:
    """Rank of the Hessian of ``f`` in the affine chart ``x_pivot = 1``.

    Raises :class:`NotCriticalError` unless every first partial vanishes at y.
    """
    from .linalg import ExactMat, rank

    if not isinstance(y, ProjPoint):
        y = ProjPoint.of(y)
    grads = gradient(f)
    if any(evaluate(g, y) for g in grads):
        raise NotCriticalError(f"{y} is not a critical point of f")
    chart = [j for j in range(f.n_vars) if j != y.pivot]
    # x_pivot is frozen at 1, so the chart Hessian is the projective one with
    # the pivot row and column removed.
    rows = [[evaluate(partial(grads[a], b), y) for b in chart] for a in chart]
    return rank(ExactMat.from_rows(rows, ncols=len(chart)))
