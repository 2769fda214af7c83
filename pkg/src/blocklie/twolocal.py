"""2-local derivations of B, represented by their witness families.

A 2-local derivation Delta is given operationally: a provider maps each
ordered pair (x, y) to a derivation D_{x,y} that must agree with Delta at x
and at y. We set Delta(x) := provider(x, x)(x); consistency across pairs is
audited rather than assumed.

The main entry point is :func:`reconstruct`, which turns any such Delta into
one global derivation ad(a) + lambda*d using three probe vectors
L[0,0], L[1,0], L[-1,1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import BasisIndex, Element, L, scale
from .derivations import KERNEL_K, InnerOuterDerivation
from .errors import AnchorContractViolation, KernelNotAnnihilating, NotProportional, PreconditionFailed
from .reports import Report
from .scalar import ONE, ZERO, Scalar

# A provider may return anything with ``apply(Element) -> Element``; genuine
# families return InnerOuterDerivation.
WitnessProvider = Callable[[Element, Element], InnerOuterDerivation]

HOMOGENEITY_FACTORS = (Scalar(0), Scalar(-1), Scalar(2), Scalar(Fraction(1, 2)))

ANCHOR_X = L(0, 0)
ANCHOR_Y = L(1, 0)
PROBE = L(-1, 1)
_PROBE_INDEX = BasisIndex(-1, 1)


class TwoLocalMap:
    def __init__(self, provider: WitnessProvider):
        self.provider = provider

    def witness(self, x: Element, y: Element):
        return self.provider(x, y)

    def evaluate(self, x: Element) -> Element:
        return self.provider(x, x).apply(x)

    __call__ = evaluate


def evaluate(delta: TwoLocalMap, x: Element) -> Element:
    return delta.evaluate(x)


@dataclass(frozen=True)
class Perturbation:
    """On the ordered pair (x, y) the witness becomes hidden + coeff * kernel."""

    x: Element
    y: Element
    kernel: InnerOuterDerivation
    coeff: Scalar = ONE

    def __post_init__(self):
        object.__setattr__(self, "coeff", Scalar.coerce(self.coeff))

    def matches(self, x: Element, y: Element) -> bool:
        return x == self.x and y == self.y

    def residuals(self) -> list[tuple[Element, Element]]:
        """(member, kernel(member)) for every member of the pair not killed."""
        out = []
        for m in (self.x, self.y):
            r = self.kernel.apply(m)
            if r:
                out.append((m, r))
        return out


@dataclass(frozen=True)
class WitnessFamilySpec:
    """A genuine 2-local derivation with a non-constant witness family.

    Every kernel must kill both members of its pair; this is enforced at
    construction unless ``validate=False`` (used to build deliberately
    broken providers).
    """

    hidden: InnerOuterDerivation
    perturbations: tuple[Perturbation, ...] = ()
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "perturbations", tuple(self.perturbations))
        if self.validate:
            for p in self.perturbations:
                bad = p.residuals()
                if bad:
                    raise KernelNotAnnihilating((str(p.x), str(p.y)), bad[0][1])

    def provider(self, x: Element, y: Element) -> InnerOuterDerivation:
        D = self.hidden
        for p in self.perturbations:
            if p.matches(x, y):
                D = D + p.coeff * p.kernel
        return D

    def __call__(self, x: Element, y: Element) -> InnerOuterDerivation:
        return self.provider(x, y)

    def two_local(self) -> TwoLocalMap:
        return TwoLocalMap(self.provider)


def audit_witnesses(delta: TwoLocalMap, pairs: Iterable[tuple[Element, Element]],
                    factors: Sequence[Scalar] = HOMOGENEITY_FACTORS) -> Report:
    """Check D_{x,y}(x) = Delta(x), D_{x,y}(y) = Delta(y) and Delta(kx) = k Delta(x)."""
    report = Report("witness audit")
    cache: dict[Element, Element] = {}

    def delta_of(v: Element) -> Element:
        if v not in cache:
            cache[v] = delta.evaluate(v)
        return cache[v]

    for x, y in pairs:
        D = delta.witness(x, y)
        for name, v in (("x", x), ("y", y)):
            report.checked += 1
            r = D.apply(v) - delta_of(v)
            if r:
                report.fail(f"pair ({x}, {y})", f"D_xy({name}) != Delta({name})", r)
        for v in (x, y):
            for k in factors:
                report.checked += 1
                r = delta_of(scale(k, v)) - scale(k, delta_of(v))
                if r:
                    report.fail(f"Delta({k}*({v}))", "Delta(kx) != k Delta(x)", r)
    return report


# -- lemma checks ----------------------------------------------------------

def _require_kills(D: InnerOuterDerivation, target: Element, name: str) -> None:
    r = D.apply(target)
    if r:
        raise PreconditionFailed(f"derivation does not annihilate {name}: image {r}", r)


def lemma31_allowed(beta: int, j: int, s: BasisIndex) -> bool:
    """Whether a_s may be nonzero in a derivation killing L[beta, j] (s != (0,0) when beta+j != 0)."""
    if beta + j == 0:
        return s.alpha == -s.i
    num = beta * s.i + beta - s.i + j
    return num % (j + 1) == 0 and s.alpha == num // (j + 1)


def lemma31_constraint_check(beta: int, j: int, D: InnerOuterDerivation) -> Report:
    """Support/eigenvalue constraints on derivations that kill L[beta, j].

    For beta + j != 0 the inner part lives on {(k_i, i)} with
    k_i = (beta*i + beta - i + j)/(j+1) integral, plus (0,0) carrying
    beta/(beta+j) * lambda. For j = -beta it lives on {(-i, i)} and
    lambda vanishes unless beta = 0.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    target = L(beta, j)
    _require_kills(D, target, f"L[{beta},{j}]")
    report = Report(f"kernel constraints at L[{beta},{j}]")
    origin = BasisIndex(0, 0)
    if beta + j != 0:
        for s, c in D.inner.items():
            if s == origin:
                continue
            report.checked += 1
            if not lemma31_allowed(beta, j, s):
                report.fail(f"a[{s.alpha},{s.i}] = {c}", "index is not of the form (k_i, i)")
        report.checked += 1
        expected = D.lam * Fraction(beta, beta + j)
        a00 = D.inner.coeff(origin)
        if a00 != expected:
            report.fail("a[0,0]", f"expected beta/(beta+j)*lambda = {expected}, got {a00}")
    else:
        for s, c in D.inner.items():
            report.checked += 1
            if s.alpha != -s.i:
                report.fail(f"a[{s.alpha},{s.i}] = {c}", "index is not of the form (-i, i)")
        report.checked += 1
        if beta != 0 and D.lam:
            report.fail("lambda", f"must vanish for beta = {beta}, got {D.lam}")
    return report


def lemma34_target(p: int) -> Element:
    return L(p, 0) + L(-2 * p, 2 * p)


def lemma34_support_check(p: int, D: InnerOuterDerivation) -> Report:
    """Derivations killing L[p,0] + L[-2p,2p] are inner with alpha + i in pZ+.

    Only this necessary condition is checked; no converse is claimed.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    _require_kills(D, lemma34_target(p), f"L[{p},0] + L[{-2 * p},{2 * p}]")
    report = Report(f"support filter for p = {p}")
    report.checked += 2
    if D.lam:
        report.fail("lambda", f"must vanish, got {D.lam}")
    a00 = D.inner.coeff(BasisIndex(0, 0))
    if a00:
        report.fail("a[0,0]", f"must vanish, got {a00}")
    for s, c in D.inner.items():
        if s == (0, 0):
            continue
        report.checked += 1
        level = s.alpha + s.i
        if level < 0 or level % p:
            report.fail(f"a[{s.alpha},{s.i}] = {c}", f"alpha + i = {level} is not in {p}Z+")
    return report


def _require_anchor_zero(delta: TwoLocalMap) -> None:
    for v in (ANCHOR_X, ANCHOR_Y):
        r = delta.evaluate(v)
        if r:
            raise PreconditionFailed(f"Delta({v}) = {r}, expected 0", r)


def lemma32_form_check(delta: TwoLocalMap, samples: Iterable[BasisIndex]) -> Report:
    """With Delta(L[0,0]) = Delta(L[1,0]) = 0, Delta(L[b,j]) = j*xi*L[b,j].

    xi is read off the witness for (L[1,0], L[b,j]) as minus its lambda.
    For j = 0 the image must be zero and xi is reported as 0.
    """
    _require_anchor_zero(delta)
    report = Report("eigenvalue form on basis vectors")
    xis = {}
    for b in samples:
        b = b if isinstance(b, BasisIndex) else BasisIndex(*b)
        report.checked += 1
        v = L(b.alpha, b.i)
        image = delta.evaluate(v)
        where = f"L[{b.alpha},{b.i}]"
        if b.i == 0:
            xis[b] = ZERO
            if image:
                report.fail(where, "j = 0 requires Delta(L) = 0", image)
            continue
        xi = -delta.witness(ANCHOR_Y, v).lam
        xis[b] = xi
        off = image - scale(xi * b.i, v)
        if off:
            if set(image.terms) - {b}:
                report.fail(where, "image is not a multiple of the basis vector", image)
            else:
                report.fail(where, f"image {image} != j*xi*L with xi = {xi}", off)
    report.notes["xi"] = ", ".join(f"L[{b.alpha},{b.i}]: {x}" for b, x in sorted(xis.items()))
    report.data["xi"] = xis
    return report


def grading_vector(x: Element) -> Element:
    """sum k * mu_{g,k} L[g,k] for x = sum mu_{g,k} L[g,k]."""
    return Element._wrap({b: c * b.i for b, c in x.terms.items() if b.i})


def lemma33_form_check(delta: TwoLocalMap, x: Element, n: int | None = None) -> Report:
    """With Delta(L[0,0]) = Delta(L[1,0]) = 0, Delta(x) is xi_x times the grading vector of x.

    When ``n`` is given (or derived as a large shift beyond the support of
    x), xi_x is also compared with minus the lambda of the witness for
    (L[n,0], x).
    """
    _require_anchor_zero(delta)
    report = Report(f"eigenvalue form at {x}")
    report.checked += 1
    image = delta.evaluate(x)
    ref = grading_vector(x)
    if not ref:
        xi = ZERO
        if image:
            report.fail(str(x), "grading vector is zero but Delta(x) is not", image)
    else:
        lead = min(ref.terms)
        xi = image.coeff(lead) / ref.coeff(lead)
        off = image - scale(xi, ref)
        if off:
            report.fail(str(x), "Delta(x) is not proportional to the grading vector", off)
    report.notes["xi"] = xi
    report.data["xi"] = xi
    if ref and n is None:
        n = 2 + max(abs(b.alpha) + b.i for b in x.terms)
    if ref and n:
        report.checked += 1
        witness_xi = -delta.witness(L(n, 0), x).lam
        report.notes["witness_xi"] = witness_xi
        if witness_xi != xi and not report.violations:
            report.fail(f"witness (L[{n},0], x)", f"-lambda = {witness_xi} differs from xi = {xi}")
    return report


# -- reconstruction ---------------------------------------------------------

@dataclass
class Reconstruction:
    derivation: InnerOuterDerivation
    anchor: InnerOuterDerivation
    xi: Scalar
    verification: Report


def reconstruct(delta: TwoLocalMap, probes: Iterable[Element]) -> Reconstruction:
    """Recover the global derivation that a 2-local derivation equals.

    D0 is the witness for (L[0,0], L[1,0]). Delta - D0 kills both anchors, so
    on L[-1,1] it equals xi * L[-1,1]; the kernel derivation
    K = ad(L[0,0]) + d acts there as -1 and kills both anchors, hence
    D = D0 - xi*K matches Delta at all three probes and therefore everywhere.
    """
    D0 = delta.witness(ANCHOR_X, ANCHOR_Y)
    if not isinstance(D0, InnerOuterDerivation):
        raise AnchorContractViolation("anchor witness is not of the form ad(a) + lambda*d")
    for v in (ANCHOR_X, ANCHOR_Y):
        r = delta.evaluate(v) - D0.apply(v)
        if r:
            raise AnchorContractViolation(f"anchor witness disagrees with Delta at {v}", r)
    r = delta.evaluate(PROBE) - D0.apply(PROBE)
    if set(r.terms) - {_PROBE_INDEX}:
        raise NotProportional(r)
    xi = r.coeff(_PROBE_INDEX)
    D = D0 - xi * KERNEL_K
    report = Report("reconstruction agreement")
    report.notes["anchor witness"] = str(D0)
    report.notes["xi"] = xi
    report.notes["derivation"] = str(D)
    for x in probes:
        report.checked += 1
        off = delta.evaluate(x) - D.apply(x)
        if off:
            report.fail(str(x), "Delta(x) != D(x)", off)
    return Reconstruction(D, D0, xi, report)


def window_probes(window, dense: Sequence[Element] = ()) -> list[Element]:
    """Every basis vector of ``window`` followed by the given dense elements."""
    return [Element._wrap({b: ONE}) for b in window] + list(dense)
