"""Exact arithmetic over Q and the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  :class:`GaussRat` pairs two of them as ``re + im*i``.

Textual grammar shared by every file format::

    rat   := ["-"] digits ["/" digits]
    gauss := rat | rat ("+"|"-") rat "i" | ["-"] rat "i"

so ``3``, ``-1/2``, ``1/2+1/3i`` and ``-1i`` are all valid.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

BigRat = Fraction

_RAT = r"\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^(?:(?P<re>-?{_RAT})(?:(?P<sign>[+-])(?P<im>{_RAT})i)?|(?P<pure>-?{_RAT})i)$"
)


class GaussZeroDivisionError(ZeroDivisionError):
    """Raised when inverting the zero element of Q(i)."""


class GaussParseError(ValueError):
    """Raised for text that does not match the ``gauss`` grammar."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussRat:
    """An element ``re + im*i`` of Q(i).  Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, str):
            return parse_gauss(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x)

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def invert(self) -> "GaussRat":
        n = self.norm()
        if not n:
            raise GaussZeroDivisionError("inverse of 0 in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.invert() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_gauss(self)

    def __repr__(self) -> str:
        return f"GaussRat({format_gauss(self)!r})"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def _format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussRat) -> str:
    if not z.im:
        return _format_rat(z.re)
    if not z.re:
        return _format_rat(z.im) + "i"
    sign = "-" if z.im < 0 else "+"
    return f"{_format_rat(z.re)}{sign}{_format_rat(abs(z.im))}i"


def _parse_rat(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise GaussParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_gauss(text: str) -> GaussRat:
    """Parse a value written in the ``gauss`` grammar."""
    m = _GAUSS_RE.match(text.strip())
    if m is None:
        raise GaussParseError(f"not a Gaussian rational: {text!r}")
    if m.group("pure") is not None:
        return GaussRat(0, _parse_rat(m.group("pure")))
    real = _parse_rat(m.group("re"))
    if m.group("im") is None:
        return GaussRat(real)
    imag = _parse_rat(m.group("im"))
    return GaussRat(real, imag if m.group("sign") == "+" else -imag)


def add(a: GaussRat, b: GaussRat) -> GaussRat:
    return a + b


def sub(a: GaussRat, b: GaussRat) -> GaussRat:
    return a - b


def mul(a: GaussRat, b: GaussRat) -> GaussRat:
    return a * b


def invert(a: GaussRat) -> GaussRat:
    return a.invert()
