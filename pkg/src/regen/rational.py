"""Exact scalars: reduced fractions plus a single absorbing infinity.

Every storage, bandwidth, file-size and cut value in the package is either a
:class:`fractions.Fraction` or :data:`INF`.  Floats never enter the formula path.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = ["INF", "Infinity", "Scalar", "as_scalar", "parse_scalar", "format_scalar", "smin", "is_inf"]


@total_ordering
class Infinity:
    """Positive infinity that plays well with Fraction arithmetic.

    ``0 * INF`` is defined as 0; a zero-capacity coefficient times an unbounded
    quantity contributes nothing to a cut.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("regen.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __le__(self, other):
        return other is self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        return self

    def __mul__(self, other):
        if other is self:
            return self
        if other == 0:
            return Fraction(0)
        if other < 0:
            raise ArithmeticError("negative infinity is not representable")
        return self

    __rmul__ = __mul__

    def __truediv__(self, other):
        if other is self:
            raise ArithmeticError("inf / inf is undefined")
        if other <= 0:
            raise ArithmeticError("division of inf by a non-positive value")
        return self

    def __rtruediv__(self, other):
        return Fraction(0)


INF = Infinity()

Scalar = Union[Fraction, Infinity]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def is_inf(x) -> bool:
    return x is INF


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``"inf"`` to a Scalar.

    Floats are refused: they would silently break exactness.
    """
    if x is INF:
        return INF
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar: {x!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, an integer, or ``"inf"``.  Decimal notation is rejected."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "∞"):
        return INF
    m = _RATIONAL_RE.match(t)
    if not m:
        raise ValueError(f"not an exact rational (use p/q or an integer): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(x: Scalar) -> str:
    if x is INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def smin(*values: Scalar) -> Scalar:
    """``min`` that accepts INF alongside Fractions."""
    best = values[0]
    for v in values[1:]:
        if v < best:
            best = v
    return best
