"""Exact Gaussian rationals a + b*i with a, b in Q.

Both parts are kept as :class:`fractions.Fraction`, which already stores
numerator/denominator in lowest terms with a positive denominator, so two
equal scalars always have identical components.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

ScalarLike = Union["Scalar", int, Fraction]

_FZERO = Fraction(0)
_FONE = Fraction(1)


class Scalar:
    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, (int, Rational)):
            return cls._make(Fraction(value), _FZERO)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> "Scalar":
        return Scalar._make(-self.re, -self.im)

    def __pos__(self) -> "Scalar":
        return self

    def __add__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Scalar._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Scalar._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Scalar._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return Scalar._make(a * c, _FZERO)
            return Scalar._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Scalar._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if not self.im:
            return Scalar._make(_FONE / self.re, _FZERO)
        n = self.norm()
        return Scalar._make(self.re / n, -self.im / n)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        # agrees with hash(int) / hash(Fraction) on the real line
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        if not self.im:
            return _fmt_rational(self.re)
        im = self.im
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        im_text = "i" if mag == 1 else f"{_fmt_rational(mag)} i"
        return f"({_fmt_rational(self.re)}{sign}{im_text})"


def _fmt_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
