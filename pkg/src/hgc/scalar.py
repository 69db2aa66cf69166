"""Exact Gaussian rationals and the ``"p/q"`` wire format."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

Number = Union[int, Fraction, "GaussQ"]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` into a reduced Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    value = Fraction(text.strip())
    return value


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class GaussQ:
    """A complex number ``re + im*i`` with rational parts.

    Instances are immutable and hash like the equal Fraction when real, so
    ``GaussQ(3) == 3`` and both can key the same dict slot.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    @classmethod
    def coerce(cls, value) -> GaussQ:
        if isinstance(value, GaussQ):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussQ")

    @classmethod
    def from_wire(cls, pair) -> GaussQ:
        if isinstance(pair, str):
            return cls(parse_rational(pair))
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"complex value must be [re, im], got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))

    def to_wire(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]

    # arithmetic

    def __add__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussQ(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, GaussQ):
            return GaussQ(self.re * other, self.im * other)
        if not isinstance(other, GaussQ):
            return NotImplemented
        return GaussQ(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        num = self * other.conjugate()
        return GaussQ(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return GaussQ.coerce(other) / self

    def conjugate(self) -> GaussQ:
        return GaussQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        if self.im == 0:
            return float(abs(self.re))
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussQ({format_rational(self.re)})"
        return f"GaussQ({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)
