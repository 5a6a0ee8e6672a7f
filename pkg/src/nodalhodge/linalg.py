"""Exact dense/sparse linear algebra over Q(i).

Matrices keep their real and imaginary parts as two "lanes" of sparse rows
(``dict`` from column to :class:`~fractions.Fraction`); the imaginary lane is
``None`` for rational matrices, which is the common case.

Row reduction goes through one of two exact back ends:

* FLINT (``fmpz_mat.rref``, fraction free) for dense input;
* a pure Python fraction-free sparse eliminator for sparse input, with a
  single division per row at the very end.

Both return the unique reduced row echelon form, so the choice never shows
in results.  A complex matrix ``A + iB`` is row reduced over Q through its
realification with interleaved columns ``(re c0, im c0, re c1, ...)``: the
Q-RREF of the realified row space pairs up into rows ``phi(w), phi(i*w)``
where ``w`` runs over the Q(i)-RREF of the original matrix.

:func:`bareiss_rank` and :func:`reference_rank` are an independent route
(Gaussian integers, no realification, no FLINT) used as an oracle.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import flint

from .exactnum import ZERO, GaussRat

SPARSE_DENSITY = 0.05


class ContainmentError(ValueError):
    """A quotient was requested for spaces that are not nested."""


class DimensionMismatch(ValueError):
    pass


def _split(x) -> tuple:
    if isinstance(x, GaussRat):
        return x.re, x.im
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    if isinstance(x, str):
        g = GaussRat.coerce(x)
        return g.re, g.im
    raise TypeError(f"not an exact value: {x!r}")


def _lanes_from_rows(rows: Iterable, sparse: bool) -> tuple:
    re_rows, im_rows, complex_seen = [], [], False
    for row in rows:
        items = row.items() if sparse else enumerate(row)
        re_d, im_d = {}, {}
        for c, v in items:
            a, b = _split(v)
            if a:
                re_d[c] = a
            if b:
                im_d[c] = b
                complex_seen = True
        re_rows.append(re_d)
        im_rows.append(im_d)
    return re_rows, (im_rows if complex_seen else None)


class ExactMat:
    """Matrix over Q(i) with ``rows * cols`` entries."""

    __slots__ = ("rows", "cols", "_re", "_im")

    def __init__(self, rows: int, cols: int, entries: Sequence = ()):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        dense = [entries[r * cols:(r + 1) * cols] for r in range(rows)]
        re_rows, im_rows = _lanes_from_rows(dense, sparse=False)
        self._init(rows, cols, re_rows, im_rows)

    def _init(self, rows, cols, re_rows, im_rows):
        self.rows = rows
        self.cols = cols
        self._re = re_rows
        self._im = im_rows

    @classmethod
    def _from_lanes(cls, re_rows: list, im_rows: Optional[list], cols: int) -> "ExactMat":
        m = cls.__new__(cls)
        if im_rows is not None and not any(im_rows):
            im_rows = None
        m._init(len(re_rows), cols, re_rows, im_rows)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "ExactMat":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        re_rows, im_rows = _lanes_from_rows(rows, sparse=False)
        return cls._from_lanes(re_rows, im_rows, ncols)

    @classmethod
    def from_sparse(cls, rows: Iterable, ncols: int) -> "ExactMat":
        """Rows given as ``{column: value}`` dicts."""
        rows = list(rows)
        for r in rows:
            if r and (min(r) < 0 or max(r) >= ncols):
                raise DimensionMismatch("column index out of range")
        re_rows, im_rows = _lanes_from_rows(rows, sparse=True)
        return cls._from_lanes(re_rows, im_rows, ncols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMat":
        return cls._from_lanes([{} for _ in range(rows)], None, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMat":
        return cls._from_lanes([{i: Fraction(1)} for i in range(n)], None, n)

    # -- access ---------------------------------------------------------------

    @property
    def is_real(self) -> bool:
        return self._im is None

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    def __getitem__(self, rc) -> GaussRat:
        r, c = rc
        im = self._im[r].get(c, 0) if self._im is not None else 0
        return GaussRat(self._re[r].get(c, 0), im)

    def row(self, r: int) -> dict:
        """Nonzero entries of row ``r`` as ``{column: GaussRat}``."""
        keys = set(self._re[r])
        if self._im is not None:
            keys |= set(self._im[r])
        return {c: self[r, c] for c in sorted(keys)}

    def sparse_rows(self) -> list:
        return [self.row(r) for r in range(self.rows)]

    @property
    def entries(self) -> tuple:
        return tuple(self[r, c] for r in range(self.rows) for c in range(self.cols))

    def tolist(self) -> list:
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    def nnz(self) -> int:
        keys = 0
        for r in range(self.rows):
            s = set(self._re[r])
            if self._im is not None:
                s |= set(self._im[r])
            keys += len(s)
        return keys

    def transpose(self) -> "ExactMat":
        re_t = [dict() for _ in range(self.cols)]
        for r, d in enumerate(self._re):
            for c, v in d.items():
                re_t[c][r] = v
        im_t = None
        if self._im is not None:
            im_t = [dict() for _ in range(self.cols)]
            for r, d in enumerate(self._im):
                for c, v in d.items():
                    im_t[c][r] = v
        return ExactMat._from_lanes(re_t, im_t, self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMat):
            return NotImplemented
        if self.shape != other.shape or self._re != other._re:
            return False
        empty = [{}] * self.rows
        return (self._im or empty) == (other._im or empty)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(d.items())) for d in self._re)))

    def __repr__(self):
        return f"ExactMat({self.rows}x{self.cols}, nnz={self.nnz()})"


def vstack(mats: Sequence[ExactMat], ncols: Optional[int] = None) -> ExactMat:
    mats = list(mats)
    if ncols is None:
        if not mats:
            raise DimensionMismatch("vstack of nothing needs ncols")
        ncols = mats[0].cols
    if any(m.cols != ncols for m in mats):
        raise DimensionMismatch("column counts differ")
    re_rows = [d for m in mats for d in m._re]
    if all(m._im is None for m in mats):
        return ExactMat._from_lanes(re_rows, None, ncols)
    im_rows = [d for m in mats for d in (m._im if m._im is not None else [{}] * m.rows)]
    return ExactMat._from_lanes(re_rows, im_rows, ncols)


# --------------------------------------------------------------------------
# rational engines


def _primitive(row: dict) -> dict:
    """Clear denominators and content of a nonzero rational row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            d = v.denominator
            den = den * d // gcd(den, d)
    ints = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _combine(a: int, r: dict, b: int, p: dict) -> dict:
    """``a*r - b*p`` with zero entries dropped."""
    out = {c: a * v for c, v in r.items()} if a != 1 else dict(r)
    for c, v in p.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


def _content_reduce(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _sparse_echelon(rows: Iterable[dict]) -> dict:
    """Fraction-free forward elimination; returns ``{lead column: int row}``."""
    pivots: dict = {}
    for row in rows:
        if not row:
            continue
        r = _primitive(row)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                if r[c] < 0:
                    r = {k: -v for k, v in r.items()}
                pivots[c] = r
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            r = _content_reduce(_combine(a // g, r, b // g, p))
    return pivots


def _sparse_rref(rows: Sequence[dict], ncols: int) -> tuple:
    pivots = _sparse_echelon(rows)
    order = sorted(pivots, reverse=True)
    done: dict = {}
    for c in order:
        r = pivots[c]
        hits = [k for k in r if k != c and k in done]
        for k in sorted(hits):
            if k not in r:
                continue
            p = done[k]
            a, b = p[k], r[k]
            g = gcd(a, b)
            r = _content_reduce(_combine(a // g, r, b // g, p))
        done[c] = r
    out_rows = []
    cols = sorted(done)
    for c in cols:
        r = done[c]
        lead = r[c]
        out_rows.append({k: Fraction(v, lead) for k, v in sorted(r.items())})
    return cols, out_rows


def _flint_rows(rows: Sequence[dict], ncols: int) -> flint.fmpz_mat:
    flat = [0] * (len(rows) * ncols)
    for i, row in enumerate(rows):
        base = i * ncols
        for c, v in _primitive(row).items():
            flat[base + c] = v
    return flint.fmpz_mat(len(rows), ncols, flat)


def _flint_rref(rows: Sequence[dict], ncols: int) -> tuple:
    mat = _flint_rows(rows, ncols)
    red, den, rk = mat.rref()
    den = int(den)
    cols, out_rows = [], []
    flat = red.entries()
    for i in range(rk):
        base = i * ncols
        row = {}
        for c in range(ncols):
            v = flat[base + c]
            if v:
                row[c] = Fraction(int(v), den)
        cols.append(min(row))
        out_rows.append(row)
    return cols, out_rows


def _density(rows: Sequence[dict], ncols: int) -> float:
    if not rows or not ncols:
        return 0.0
    return sum(len(r) for r in rows) / (len(rows) * ncols)


def _rref_rational(rows: Sequence[dict], ncols: int) -> tuple:
    rows = [r for r in rows if r]
    if not rows:
        return [], []
    if _density(rows, ncols) < SPARSE_DENSITY:
        return _sparse_rref(rows, ncols)
    return _flint_rref(rows, ncols)


def _rank_rational(rows: Sequence[dict], ncols: int) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if _density(rows, ncols) < SPARSE_DENSITY:
        return len(_sparse_echelon(rows))
    return _flint_rows(rows, ncols).rank()


# --------------------------------------------------------------------------
# realification for Q(i)


def _realify(re_rows: Sequence[dict], im_rows: Sequence[dict]) -> list:
    out = []
    for u, v in zip(re_rows, im_rows):
        phi, phi_i = {}, {}
        for c, x in u.items():
            phi[2 * c] = x
            phi_i[2 * c + 1] = x
        for c, y in v.items():
            phi[2 * c + 1] = y
            phi_i[2 * c] = -y
        out.append(phi)
        out.append(phi_i)
    return out


def _rref_lanes(re_rows: Sequence[dict], im_rows: Optional[Sequence[dict]], ncols: int) -> tuple:
    """RREF over Q(i).  Returns ``(pivot columns, re rows, im rows or None)``."""
    if im_rows is None:
        cols, rows = _rref_rational(re_rows, ncols)
        return cols, rows, None
    cols2, rows2 = _rref_rational(_realify(re_rows, im_rows), 2 * ncols)
    if len(cols2) % 2:
        raise AssertionError("realified row space is not stable under i")
    cols, out_re, out_im = [], [], []
    for j in range(0, len(cols2), 2):
        lead = cols2[j]
        if lead % 2 or cols2[j + 1] != lead + 1:
            raise AssertionError("realified pivots do not pair up")
        cols.append(lead // 2)
        u, v = {}, {}
        for c, x in rows2[j].items():
            (u if c % 2 == 0 else v)[c // 2] = x
        out_re.append(u)
        out_im.append(v)
    if not any(out_im):
        out_im = None
    return cols, out_re, out_im


def rref(m: ExactMat) -> tuple:
    """Reduced row echelon form of ``m`` (zero rows dropped) and pivot columns."""
    cols, re_rows, im_rows = _rref_lanes(m._re, m._im, m.cols)
    return ExactMat._from_lanes(re_rows, im_rows, m.cols), tuple(cols)


def rank(m: ExactMat) -> int:
    if m._im is None:
        return _rank_rational(m._re, m.cols)
    return _rank_rational(_realify(m._re, m._im), 2 * m.cols) // 2


def matmul(a: ExactMat, b: ExactMat) -> ExactMat:
    """Exact product, sparse row-by-row."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")

    def lane_product(x_rows, y_rows):
        out = []
        for row in x_rows:
            acc: dict = {}
            for k, xv in row.items():
                for c, yv in y_rows[k].items():
                    acc[c] = acc.get(c, 0) + xv * yv
            out.append({c: v for c, v in acc.items() if v})
        return out

    def lane_add(x, y, sign=1):
        out = []
        for p, q in zip(x, y):
            d = dict(p)
            for c, v in q.items():
                nv = d.get(c, 0) + sign * v
                if nv:
                    d[c] = nv
                else:
                    d.pop(c, None)
            out.append(d)
        return out

    rr = lane_product(a._re, b._re)
    if a._im is None and b._im is None:
        return ExactMat._from_lanes(rr, None, b.cols)
    zero_a = [{}] * a.rows
    zero_b = [{}] * b.rows
    ai = a._im if a._im is not None else zero_a
    bi = b._im if b._im is not None else zero_b
    re = lane_add(rr, lane_product(ai, bi), -1)
    im = lane_add(lane_product(a._re, bi), lane_product(ai, b._re))
    return ExactMat._from_lanes(re, im, b.cols)


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of Q(i)^ambient_dim held as its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: ExactMat, pivots: Sequence[int]):
        if basis.cols != ambient_dim:
            raise DimensionMismatch("basis width differs from ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def contains(self, other: "Subspace") -> bool:
        return contains(self, other)

    def quotient_dim(self, other: "Subspace", what: str = "") -> int:
        return quotient_dim(self, other, what)

    def vectors(self) -> list:
        return self.basis.sparse_rows()

    def contains_vector(self, vec: dict) -> bool:
        """Exact membership by reduction against the echelon basis."""
        one = ExactMat.from_sparse([vec], self.ambient_dim)
        return rank(vstack([self.basis, one])) == self.dim

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ExactMat.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ExactMat.identity(ambient_dim), range(ambient_dim))


def span(vectors, ambient_dim: int) -> Subspace:
    """Span of ``vectors`` (an ExactMat, dicts, or dense sequences)."""
    if isinstance(vectors, ExactMat):
        m = vectors
    else:
        vectors = list(vectors)
        if vectors and isinstance(vectors[0], dict):
            m = ExactMat.from_sparse(vectors, ambient_dim)
        else:
            m = ExactMat.from_rows(vectors, ambient_dim)
    if m.cols != ambient_dim:
        raise DimensionMismatch("vector length differs from ambient dimension")
    basis, pivots = rref(m)
    return Subspace(ambient_dim, basis, pivots)


def kernel_basis(m: ExactMat) -> Subspace:
    """``{v : m v = 0}`` as a canonical subspace of Q(i)^cols."""
    red, pivots = rref(m)
    if len(pivots) == m.cols:
        return Subspace.zero(m.cols)
    pivot_set = set(pivots)
    re_rows, im_rows = [], []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        u = {f: Fraction(1)}
        v = {}
        for j, p in enumerate(pivots):
            x = red._re[j].get(f)
            if x:
                u[p] = -x
            if red._im is not None:
                y = red._im[j].get(f)
                if y:
                    v[p] = -y
        re_rows.append(u)
        im_rows.append(v)
    gens = ExactMat._from_lanes(re_rows, im_rows if red._im is not None else None, m.cols)
    return span(gens, m.cols)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return span(vstack([a.basis, b.basis]), a.ambient_dim)


def sum_dim(a: Subspace, b: Subspace) -> int:
    _check_ambient(a, b)
    return rank(vstack([a.basis, b.basis]))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """``a & b`` as the common kernel of both annihilators."""
    _check_ambient(a, b)
    ann_a = kernel_basis(a.basis) if a.dim else Subspace.full(a.ambient_dim)
    ann_b = kernel_basis(b.basis) if b.dim else Subspace.full(b.ambient_dim)
    both = vstack([ann_a.basis, ann_b.basis], a.ambient_dim)
    if both.rows == 0:
        return Subspace.full(a.ambient_dim)
    return kernel_basis(both)


def contains(a: Subspace, b: Subspace) -> bool:
    """Whether ``b`` is a subspace of ``a``."""
    _check_ambient(a, b)
    if b.dim == 0:
        return True
    if b.dim > a.dim:
        return False
    return sum_dim(a, b) == a.dim


def quotient_dim(a: Subspace, b: Subspace, what: str = "") -> int:
    """``dim a - dim b`` after checking that ``b`` lies in ``a``."""
    if not contains(a, b):
        label = f" ({what})" if what else ""
        raise ContainmentError(f"quotient of non-nested spaces{label}")
    return a.dim - b.dim


# --------------------------------------------------------------------------
# reference route: Gaussian integers, no realification, no FLINT


def _gauss_int_rows(rows: Sequence[dict]) -> list:
    out = []
    for row in rows:
        den = 1
        for v in row.values():
            g = GaussRat.coerce(v)
            for q in (g.re, g.im):
                den = den * q.denominator // gcd(den, q.denominator)
        r = {}
        for c, v in row.items():
            g = GaussRat.coerce(v)
            z = (int(g.re * den), int(g.im * den))
            if z != (0, 0):
                r[c] = z
        out.append(r)
    return out


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _gdiv_exact(x, y):
    n = y[0] * y[0] + y[1] * y[1]
    num = _gmul(x, (y[0], -y[1]))
    if num[0] % n or num[1] % n:
        raise ArithmeticError("inexact Gaussian integer division in Bareiss step")
    return (num[0] // n, num[1] // n)


def _gnorm(x) -> int:
    return x[0] * x[0] + x[1] * x[1]


def bareiss_rank(m) -> int:
    """Rank by dense fraction-free (Bareiss) elimination over Z[i].

    Pivot rule: columns left to right; within a column the remaining row
    whose entry has the smallest norm, ties to the lowest row index.
    """
    if isinstance(m, ExactMat):
        rows = m.sparse_rows()
        ncols = m.cols
    else:
        m = [list(r) for r in m]
        ncols = len(m[0]) if m else 0
        rows = [{c: v for c, v in enumerate(r) if GaussRat.coerce(v)} for r in m]
    grows = _gauss_int_rows(rows)
    a = [[r.get(c, (0, 0)) for c in range(ncols)] for r in grows]
    nrows = len(a)
    prev = (1, 0)
    top = 0
    for col in range(ncols):
        if top == nrows:
            break
        best = None
        for i in range(top, nrows):
            if a[i][col] != (0, 0):
                if best is None or _gnorm(a[i][col]) < _gnorm(a[best][col]):
                    best = i
        if best is None:
            continue
        a[top], a[best] = a[best], a[top]
        piv = a[top][col]
        prow = a[top]
        for i in range(top + 1, nrows):
            ri = a[i]
            lead = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = _gdiv_exact(_gsub(_gmul(piv, ri[j]), _gmul(lead, prow[j])), prev)
            ri[col] = (0, 0)
        prev = piv
        top += 1
    return top


def reference_rank(rows: Sequence[dict]) -> int:
    """Sparse fraction-free rank over Z[i] (rows as ``{column: value}``).

    Slower than :func:`rank` but shares no code with it beyond input
    parsing; meant for cross-checking large sparse spanning sets.
    """
    pivots: dict = {}
    for row in _gauss_int_rows(rows):
        r = row
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            a, b = p[c], r[c]
            new = {k: _gmul(a, v) for k, v in r.items()}
            for k, v in p.items():
                nv = _gsub(new.get(k, (0, 0)), _gmul(b, v))
                if nv == (0, 0):
                    new.pop(k, None)
                else:
                    new[k] = nv
            g = 0
            for x, y in new.values():
                g = gcd(gcd(g, x), y)
                if g == 1:
                    break
            if g > 1:
                new = {k: (x // g, y // g) for k, (x, y) in new.items()}
            r = new
    return len(pivots)
