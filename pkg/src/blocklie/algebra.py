"""The Block-type Lie algebra B: basis L[alpha, i] (alpha in Z, i >= 0) with

    [L[a,i], L[b,j]] = ((a-1)(j+1) - (b-1)(i+1)) L[a+b, i+j].

Elements are finitely supported, so every operation here is exact on the
whole infinite-dimensional algebra; no truncation happens anywhere.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .scalar import ONE, ZERO, Scalar, ScalarLike


class BasisIndex(namedtuple("BasisIndex", "alpha i")):
    """Index (alpha, i) of the basis vector L[alpha, i].

    Being a tuple, ordering is lexicographic by (alpha, i), the canonical
    order used for all output.
    """

    __slots__ = ()

    def __new__(cls, alpha: int, i: int):
        if isinstance(alpha, bool) or isinstance(i, bool):
            raise TypeError("basis indices are integers")
        alpha, i = int(alpha), int(i)
        if i < 0:
            raise ValueError(f"second basis index must be nonnegative, got {i}")
        return super().__new__(cls, alpha, i)

    def shift(self, other: "BasisIndex") -> "BasisIndex":
        return BasisIndex(self.alpha + other.alpha, self.i + other.i)

    def __repr__(self) -> str:
        return f"({self.alpha},{self.i})"


# skips validation; only for indices built from valid ones by addition
_fast_index = BasisIndex._make


def _idx(b) -> BasisIndex:
    return b if isinstance(b, BasisIndex) else BasisIndex(*b)


@dataclass(frozen=True)
class Window:
    """Rectangle alpha_min <= alpha <= alpha_max, 0 <= i <= i_max of basis indices."""

    alpha_min: int
    alpha_max: int
    i_max: int

    def __post_init__(self):
        if self.alpha_min > self.alpha_max:
            raise ValueError(f"empty window: alpha_min {self.alpha_min} > alpha_max {self.alpha_max}")
        if self.i_max < 0:
            raise ValueError(f"i_max must be nonnegative, got {self.i_max}")

    def __iter__(self) -> Iterator[BasisIndex]:
        for a in range(self.alpha_min, self.alpha_max + 1):
            for i in range(self.i_max + 1):
                yield BasisIndex(a, i)

    def __len__(self) -> int:
        return (self.alpha_max - self.alpha_min + 1) * (self.i_max + 1)

    def __contains__(self, b) -> bool:
        a, i = b
        return self.alpha_min <= a <= self.alpha_max and 0 <= i <= self.i_max

    def contains_support(self, x: "Element") -> bool:
        return all(b in self for b in x.terms)

    def __str__(self) -> str:
        return f"alpha in [{self.alpha_min},{self.alpha_max}], i <= {self.i_max}"


class Element:
    """A finitely supported combination sum c_b L_b.

    Immutable. Zero coefficients are never stored, so ``support`` is exact
    and equality is plain dictionary equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[BasisIndex, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            c = Scalar.coerce(c)
            if not c:
                continue
            b = _idx(b)
            s = acc.get(b)
            s = c if s is None else s + c
            if s:
                acc[b] = s
            else:
                del acc[b]
        self._terms = acc
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "Element":
        # caller guarantees normalized BasisIndex -> nonzero Scalar
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, alpha: int, i: int, coeff: ScalarLike = 1) -> "Element":
        return cls({BasisIndex(alpha, i): coeff})

    @property
    def terms(self) -> Mapping[BasisIndex, Scalar]:
        return MappingProxyType(self._terms)

    def support(self) -> list[BasisIndex]:
        return sorted(self._terms)

    def items(self) -> list[tuple[BasisIndex, Scalar]]:
        """Terms in canonical (alpha, i) order."""
        return sorted(self._terms.items())

    def coeff(self, b) -> Scalar:
        return self._terms.get(_idx(b), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- vector space ---------------------------------------------------
    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for b, c in other._terms.items():
            s = acc.get(b)
            if s is None:
                acc[b] = c
            else:
                s = s + c
                if s:
                    acc[b] = s
                else:
                    del acc[b]
        return Element._wrap(acc)

    def __neg__(self) -> "Element":
        return Element._wrap({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, k: ScalarLike) -> "Element":
        try:
            k = Scalar.coerce(k)
        except TypeError:
            return NotImplemented
        return scale(k, self)

    def __mul__(self, k: ScalarLike) -> "Element":
        return self.__rmul__(k)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        from .exprio import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"


ZERO_ELEMENT = Element._wrap({})


def L(alpha: int, i: int) -> Element:
    """The basis vector L[alpha, i]."""
    return Element._wrap({BasisIndex(alpha, i): ONE})


# -- linear plumbing -------------------------------------------------------

def add(x: Element, y: Element) -> Element:
    return x + y


def scale(c: ScalarLike, x: Element) -> Element:
    c = Scalar.coerce(c)
    if not c or not x._terms:
        return ZERO_ELEMENT
    if c == ONE:
        return x
    return Element._wrap({b: c * v for b, v in x._terms.items()})


def coeff(x: Element, b) -> Scalar:
    return x.coeff(b)


def linear_combination(pairs: Iterable[tuple[ScalarLike, Element]]) -> Element:
    acc: dict[BasisIndex, Scalar] = {}
    for c, x in pairs:
        c = Scalar.coerce(c)
        if not c:
            continue
        for b, v in x._terms.items():
            s = acc.get(b)
            s = c * v if s is None else s + c * v
            if s:
                acc[b] = s
            else:
                acc.pop(b, None)
    return Element._wrap(acc)


# -- Lie structure ---------------------------------------------------------

def structure_integer(a: BasisIndex, b: BasisIndex) -> int:
    """Integer k with [L_a, L_b] = k L_{a+b}."""
    return (a[0] - 1) * (b[1] + 1) - (b[0] - 1) * (a[1] + 1)


def structure_constant(a, b) -> tuple[Scalar, BasisIndex]:
    a, b = _idx(a), _idx(b)
    return Scalar(structure_integer(a, b)), BasisIndex(a.alpha + b.alpha, a.i + b.i)


def bracket(x: Element, y: Element) -> Element:
    """Bilinear extension of the structure constants; exact, normalized."""
    acc: dict[BasisIndex, Scalar] = {}
    for a, ca in x._terms.items():
        a0, a1 = a
        for b, cb in y._terms.items():
            k = (a0 - 1) * (b[1] + 1) - (b[0] - 1) * (a1 + 1)
            if not k:
                continue
            t = _fast_index((a0 + b[0], a1 + b[1]))
            v = ca * cb * k
            s = acc.get(t)
            if s is None:
                acc[t] = v
            else:
                s = s + v
                if s:
                    acc[t] = s
                else:
                    del acc[t]
    return Element._wrap(acc)


def cocycle(a, b) -> Scalar:
    """Central-extension 2-cocycle on basis vectors.

    Nonzero only for i = j = 0 and alpha + beta = 0, where it equals
    (alpha^3 - alpha)/6.
    """
    a, b = _idx(a), _idx(b)
    if a.i or b.i or a.alpha + b.alpha:
        return ZERO
    al = a.alpha
    return Scalar(Fraction(al * al * al - al, 6))


def cocycle_form(x: Element, y: Element) -> Scalar:
    """The cocycle extended bilinearly to elements."""
    total = ZERO
    for a, ca in x._terms.items():
        if a.i:
            continue
        for b, cb in y._terms.items():
            if b.i or a.alpha + b.alpha:
                continue
            total = total + ca * cb * cocycle(a, b)
    return total
