"""Exhaustive identity checks on windows of basis vectors."""

from __future__ import annotations

from itertools import product

from .algebra import Element, Window, bracket, cocycle_form
from .reports import Report
from .scalar import ONE


def _basis(window: Window) -> list[Element]:
    return [Element._wrap({b: ONE}) for b in window]


def check_antisymmetry(window: Window) -> Report:
    report = Report(f"antisymmetry on {window}", unit="pairs")
    basis = _basis(window)
    for x, y in product(basis, repeat=2):
        report.checked += 1
        r = bracket(x, y) + bracket(y, x)
        if r:
            report.fail(f"({x}, {y})", "[x,y] + [y,x] != 0", r)
    return report


def jacobi_residual(x: Element, y: Element, z: Element) -> Element:
    return bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)


def check_jacobi(window: Window) -> Report:
    report = Report(f"Jacobi identity on {window}", unit="triples")
    basis = _basis(window)
    for x, y, z in product(basis, repeat=3):
        report.checked += 1
        r = jacobi_residual(x, y, z)
        if r:
            report.fail(f"({x}, {y}, {z})", "Jacobi sum != 0", r)
    return report


def check_virasoro(alpha_min: int, alpha_max: int) -> Report:
    """[L[a,0], L[b,0]] = (a - b) L[a+b,0] on the given range."""
    report = Report(f"Virasoro law for alpha, beta in [{alpha_min},{alpha_max}]", unit="pairs")
    for a, b in product(range(alpha_min, alpha_max + 1), repeat=2):
        report.checked += 1
        got = bracket(Element.basis(a, 0), Element.basis(b, 0))
        want = Element.basis(a + b, 0, a - b)
        if got != want:
            report.fail(f"(L[{a},0], L[{b},0])", f"expected {want}", got - want)
    return report


def check_cocycle(window: Window) -> Report:
    """Antisymmetry of the cocycle on pairs and the 2-cocycle identity on triples."""
    report = Report(f"central extension cocycle on {window}")
    basis = _basis(window)
    for x, y in product(basis, repeat=2):
        report.checked += 1
        s = cocycle_form(x, y) + cocycle_form(y, x)
        if s:
            report.fail(f"psi({x}, {y})", f"psi(x,y) + psi(y,x) = {s}")
    for x, y, z in product(basis, repeat=3):
        report.checked += 1
        s = (cocycle_form(bracket(x, y), z) + cocycle_form(bracket(y, z), x)
             + cocycle_form(bracket(z, x), y))
        if s:
            report.fail(f"({x}, {y}, {z})", f"cocycle identity sum = {s}")
    return report
