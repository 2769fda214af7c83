"""Derivations of B.

Every derivation of B has the form ad(a) + lambda*d, where d is the outer
derivation d(L[b,j]) = b L[b,j]. This module evaluates such maps, checks
the Leibniz rule on arbitrary candidate maps, and recovers (a, lambda) from
a finite table of values by an exact linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from . import linsolve
from .algebra import (
    ZERO_ELEMENT,
    BasisIndex,
    Element,
    Window,
    _fast_index,
    bracket,
    linear_combination,
    scale,
    structure_integer,
)
from .errors import Inconsistent, MissingAssignment, Underdetermined
from .reports import Report
from .scalar import ONE, ZERO, Scalar, ScalarLike


def outer_d(x: Element) -> Element:
    """d(L[b,j]) = b L[b,j], extended linearly."""
    return Element._wrap({b: c * b.alpha for b, c in x._terms.items() if b.alpha})


@dataclass(frozen=True)
class InnerOuterDerivation:
    """The derivation ad(inner) + lam * d."""

    inner: Element = ZERO_ELEMENT
    lam: Scalar = ZERO

    def __post_init__(self):
        object.__setattr__(self, "lam", Scalar.coerce(self.lam))

    def apply(self, x: Element) -> Element:
        out = bracket(self.inner, x)
        if self.lam:
            out = out + scale(self.lam, outer_d(x))
        return out

    __call__ = apply

    def __add__(self, other: "InnerOuterDerivation") -> "InnerOuterDerivation":
        if not isinstance(other, InnerOuterDerivation):
            return NotImplemented
        return InnerOuterDerivation(self.inner + other.inner, self.lam + other.lam)

    def __neg__(self) -> "InnerOuterDerivation":
        return InnerOuterDerivation(-self.inner, -self.lam)

    def __sub__(self, other: "InnerOuterDerivation") -> "InnerOuterDerivation":
        if not isinstance(other, InnerOuterDerivation):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, k: ScalarLike) -> "InnerOuterDerivation":
        k = Scalar.coerce(k)
        return InnerOuterDerivation(scale(k, self.inner), k * self.lam)

    def is_zero(self) -> bool:
        return not self.inner and not self.lam

    def __str__(self) -> str:
        from .exprio import format_derivation

        return format_derivation(self)


OUTER_D = InnerOuterDerivation(ZERO_ELEMENT, ONE)
# ad(L[0,0]) + d sends L[b,j] to -j L[b,j]; it kills L[0,0] and L[1,0].
KERNEL_K = InnerOuterDerivation(Element({BasisIndex(0, 0): 1}), ONE)


def apply(D: InnerOuterDerivation, x: Element) -> Element:
    return D.apply(x)


@dataclass(frozen=True)
class DerivationTable:
    """Values of a candidate linear map on every basis vector of a window.

    Assigned values may have support outside the window.
    """

    window: Window
    assignments: Mapping[BasisIndex, Element]

    def __post_init__(self):
        assignments = dict(self.assignments)
        for b in assignments:
            if b not in self.window:
                raise ValueError(f"assignment for L[{b.alpha},{b.i}] lies outside the window {self.window}")
        for b in self.window:
            if b not in assignments:
                raise MissingAssignment(b)
        object.__setattr__(self, "assignments", MappingProxyType(assignments))

    def covers(self, x: Element) -> bool:
        return all(b in self.window for b in x._terms)

    def apply(self, x: Element) -> Element:
        """Linear extension; ``x`` must be supported inside the window."""
        missing = [b for b in x._terms if b not in self.window]
        if missing:
            raise KeyError(f"L[{missing[0].alpha},{missing[0].i}] is outside the table window")
        return linear_combination((c, self.assignments[b]) for b, c in x._terms.items())

    __call__ = apply


def table_of(D, window: Window) -> DerivationTable:
    """Restrict a map (anything with ``apply``) to the basis of ``window``."""
    return DerivationTable(window, {b: D.apply(Element._wrap({b: ONE})) for b in window})


Derivation = Union[InnerOuterDerivation, DerivationTable]


def leibniz_residual(D, x: Element, y: Element) -> Element:
    """D([x,y]) - [D(x), y] - [x, D(y)]."""
    return D.apply(bracket(x, y)) - bracket(D.apply(x), y) - bracket(x, D.apply(y))


def check_leibniz(D: Derivation, pairs: Iterable[tuple[Element, Element]]) -> Report:
    report = Report("Leibniz rule", unit="pairs")
    for x, y in pairs:
        if isinstance(D, DerivationTable):
            if not (D.covers(x) and D.covers(y) and D.covers(bracket(x, y))):
                report.skipped.append(f"({x}, {y}): outside table window")
                continue
        report.checked += 1
        r = leibniz_residual(D, x, y)
        if r:
            report.fail(f"({x}, {y})", "D([x,y]) != [D(x),y] + [x,D(y)]", r)
    return report


# -- linear systems in the unknowns (a_s for s in search, lambda) ---------

class _Unknowns:
    """Column layout: search-window indices in canonical order, lambda last."""

    def __init__(self, search: Window):
        self.indices = list(search)
        self.col = {b: n for n, b in enumerate(self.indices)}
        self.lam = len(self.indices)
        self.ncols = self.lam + 1

    def equations(self, x: Element, target: Element = ZERO_ELEMENT):
        """Rows expressing (ad(a) + lambda d)(x) = target, one per output index."""
        rows: dict[BasisIndex, dict[int, Scalar]] = {}
        for b, cb in x._terms.items():
            for s in self.indices:
                k = structure_integer(s, b)
                if not k:
                    continue
                t = _fast_index((s[0] + b[0], s[1] + b[1]))
                row = rows.setdefault(t, {})
                col = self.col[s]
                row[col] = row.get(col, ZERO) + cb * k
            if b.alpha:
                row = rows.setdefault(b, {})
                row[self.lam] = row.get(self.lam, ZERO) + cb * b.alpha
        for t in target._terms:
            rows.setdefault(t, {})
        for t in sorted(rows):
            yield rows[t], target.coeff(t)

    def derivation(self, vec) -> InnerOuterDerivation:
        inner = Element._wrap({b: vec[n] for n, b in enumerate(self.indices) if vec[n]})
        return InnerOuterDerivation(inner, vec[self.lam])


def decompose(T: DerivationTable, search: Window | None = None) -> InnerOuterDerivation:
    """Find the unique ad(a) + lambda*d, supp(a) in ``search``, agreeing with T.

    ``search`` defaults to the table's own window. Raises Inconsistent when
    no such derivation exists and Underdetermined when the table does not
    pin it down.
    """
    if search is None:
        search = T.window
    unk = _Unknowns(search)
    system = linsolve.RREF(unk.ncols)
    for b in T.window:
        for row, rhs in unk.equations(Element._wrap({b: ONE}), T.assignments[b]):
            system.add_equation(row, rhs)
            if system.inconsistent:
                raise Inconsistent(
                    f"no ad(a) + lambda*d with supp(a) in {search} matches the table at L[{b.alpha},{b.i}]"
                )
    free = system.nullspace()
    if free:
        raise Underdetermined([unk.derivation(v) for v in free])
    D = unk.derivation(system.particular_solution())
    for b in T.window:
        if D.apply(Element._wrap({b: ONE})) != T.assignments[b]:
            raise Inconsistent(f"nonzero residual at L[{b.alpha},{b.i}]")
    return D


def find_annihilators(targets: Iterable[Element], search: Window) -> list[InnerOuterDerivation]:
    """Basis of all ad(a) + lambda*d with supp(a) in ``search`` killing every target.

    Read off the reduced row-echelon form (pivots in canonical index order,
    lambda last), so the basis is deterministic.
    """
    unk = _Unknowns(search)
    system = linsolve.RREF(unk.ncols)
    for t in targets:
        for row, rhs in unk.equations(t):
            system.add_equation(row, rhs)
    return [unk.derivation(v) for v in system.nullspace()]
