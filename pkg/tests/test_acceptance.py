"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import functools
import io
import random
from fractions import Fraction

import pytest

from blocklie import (
    KERNEL_K,
    OUTER_D,
    AnchorContractViolation,
    DomainError,
    Element,
    ExprSyntaxError,
    Inconsistent,
    InnerOuterDerivation,
    KernelNotAnnihilating,
    L,
    NotProportional,
    Perturbation,
    TwoLocalMap,
    Window,
    WitnessFamilySpec,
    audit_witnesses,
    bracket,
    check_leibniz,
    cocycle,
    decompose,
    evaluate,
    find_annihilators,
    lemma31_constraint_check,
    lemma32_form_check,
    lemma33_form_check,
    lemma34_support_check,
    reconstruct,
)
from blocklie.algebra import BasisIndex
from blocklie.checks import check_antisymmetry, check_cocycle, check_jacobi, check_virasoro
from blocklie.cli import run
from blocklie.derivations import DerivationTable, table_of
from blocklie.exprio import (
    format_derivation,
    format_element,
    load_witness_family,
    parse_derivation,
    parse_element,
)
from blocklie.sampling import (
    make_rng,
    random_dense_element,
    random_derivation,
    random_element,
    random_scalar,
)
from blocklie.twolocal import lemma34_target, window_probes

from conftest import DATA

RESULTS: dict[int, str] = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def test(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[number] = f"[{number:2d}] FAIL  {title}: {type(exc).__name__}: {exc}"
                raise
            RESULTS[number] = f"[{number:2d}] PASS  {title}: {detail}"
        return test
    return wrap


def acceptance_lines() -> list[str]:
    return [RESULTS[k] for k in sorted(RESULTS)]


@criterion(1, "Jacobi and antisymmetry, alpha in [-4,4], i <= 3")
def test_jacobi_antisymmetry():
    w = Window(-4, 4, 3)
    assert len(w) == 36
    jac, anti = check_jacobi(w), check_antisymmetry(w)
    assert jac.ok and anti.ok, (jac.violations[:3], anti.violations[:3])
    assert jac.checked == 36 ** 3
    return f"{jac.checked} triples, {anti.checked} pairs, 0 residuals"


@criterion(2, "Virasoro subalgebra law, alpha, beta in [-10,10]")
def test_virasoro():
    report = check_virasoro(-10, 10)
    assert report.ok and report.checked == 441
    return f"{report.checked} pairs exact"


@criterion(3, "central extension cocycle, alpha in [-6,6], i <= 2")
def test_cocycle():
    report = check_cocycle(Window(-6, 6, 2))
    assert report.ok, report.violations[:3]
    assert cocycle(BasisIndex(2, 0), BasisIndex(-2, 0)) == 1
    assert cocycle(BasisIndex(1, 0), BasisIndex(-1, 0)) == 0
    return f"{report.checked} checks, psi(L[2,0],L[-2,0]) = 1, psi(L[1,0],L[-1,0]) = 0"


@criterion(4, "Leibniz rule for d and sampled ad(a) + lambda*d")
def test_leibniz():
    rng = make_rng(4)
    w = Window(-4, 4, 3)
    pairs = [(random_element(rng, w), random_element(rng, w)) for _ in range(1000)]
    assert check_leibniz(OUTER_D, pairs).ok
    checked = 1000
    for n in range(20):
        D = random_derivation(rng, w)
        report = check_leibniz(D, pairs[50 * n: 50 * n + 50])
        assert report.ok, (str(D), report.violations[:1])
        checked += report.checked
    return f"{checked} pairs, 0 failures"


@criterion(5, "decompose round trip on alpha in [-3,3], i <= 3")
def test_decompose_round_trip():
    rng = make_rng(5)
    w = Window(-3, 3, 3)
    for _ in range(100):
        D = random_derivation(rng, w, max_terms=6)
        got = decompose(table_of(D, w))
        assert got == D, (str(got), str(D))
    with pytest.raises(Inconsistent):
        decompose(DerivationTable(Window(0, 0, 0), {BasisIndex(0, 0): L(0, 0)}))
    return "100 exact recoveries, T(L[0,0]) = L[0,0] rejected as Inconsistent"


def _template_31(rng, beta, j, i_max=6):
    lam = random_scalar(rng)
    terms = {}
    for i in range(i_max + 1):
        num = beta * i + beta - i + j
        if num % (j + 1) == 0 and rng.random() < 0.7:
            terms[BasisIndex(num // (j + 1), i)] = random_scalar(rng, nonzero=True)
    terms[BasisIndex(0, 0)] = terms.get(BasisIndex(0, 0), 0) + Fraction(beta, beta + j) * lam
    return InnerOuterDerivation(Element(terms), lam)


def _template_32(rng, beta, i_max=6):
    lam = random_scalar(rng) if beta == 0 else 0
    terms = {BasisIndex(-i, i): random_scalar(rng) for i in range(i_max + 1)}
    return InnerOuterDerivation(Element(terms), lam)


@criterion(6, "forward kernel templates annihilate their targets")
def test_lemma31_forward():
    rng = make_rng(6)
    count = 0
    for beta, j in [(3, 1), (0, 1), (2, 2), (-1, 1), (5, 0)]:
        for _ in range(50):
            # beta + j = 0 leaves a_{0,0} unconstrained and forces lambda = 0
            D = _template_32(rng, beta) if beta + j == 0 else _template_31(rng, beta, j)
            assert D.apply(L(beta, j)) == Element(), (beta, j, str(D))
            count += 1
    for beta in (-2, -1, 0):
        for _ in range(50):
            D = _template_32(rng, beta)
            assert D.apply(L(beta, -beta)) == Element(), (beta, str(D))
            count += 1
    return f"{count} template derivations, all exact zeros"


@criterion(7, "annihilator bases obey the support constraints, alpha in [-4,4], i <= 4")
def test_necessity():
    w = Window(-4, 4, 4)
    total = 0
    for beta, j in [(3, 1), (0, 1), (2, 2), (-1, 1), (5, 0), (-2, 2), (0, 0)]:
        for D in find_annihilators([L(beta, j)], w):
            assert lemma31_constraint_check(beta, j, D).ok, (beta, j, str(D))
            total += 1
    for p in (1, 2):
        basis = find_annihilators([lemma34_target(p)], w)
        assert basis
        for D in basis:
            assert lemma34_support_check(p, D).ok, (p, str(D))
            total += 1
    return f"{total} basis derivations checked"


@criterion(8, "kernel derivation acts as -j on L[b,j], alpha in [-6,6], i <= 6")
def test_kernel_identity():
    w = Window(-6, 6, 6)
    for b in w:
        assert KERNEL_K.apply(L(*b)) == -b.i * L(*b), b
    assert not KERNEL_K.apply(L(0, 0)) and not KERNEL_K.apply(L(1, 0))
    assert KERNEL_K.apply(L(-1, 1)) == -L(-1, 1)
    return f"{len(w)} basis vectors"


@criterion(9, "reconstruction of hidden derivations")
def test_reconstruction():
    rng = make_rng(9)
    probe_window = Window(-4, 4, 4)
    runs = 0
    for _ in range(20):
        hidden = random_derivation(rng, Window(-3, 3, 3), max_terms=6)
        dense = [random_dense_element(rng, probe_window, density=0.3) for _ in range(10)]
        probes = window_probes(probe_window, dense)
        families = [WitnessFamilySpec(hidden)] + [
            WitnessFamilySpec(hidden, (Perturbation(L(0, 0), L(1, 0), KERNEL_K, c),))
            for c in (1, -2, Fraction(1, 2))
        ]
        for spec in families:
            delta = spec.two_local()
            result = reconstruct(delta, probes)
            assert result.verification.ok, result.verification.violations[:1]
            assert result.verification.checked == len(probes)
            assert result.derivation == hidden, (str(result.derivation), str(hidden))
            for x in probes:
                assert result.derivation.apply(x) == evaluate(delta, x)
            runs += 1
    return f"{runs} reconstructions, D = D* each time, 0 verification failures"


class _NotADerivation:
    """Agrees with a genuine witness except for an extra L[0,0] on L[-1,1]."""

    def __init__(self, base):
        self.base = base

    def apply(self, x):
        return self.base.apply(x) + x.coeff(BasisIndex(-1, 1)) * L(0, 0)


@criterion(10, "negative paths")
def test_negative_paths():
    out, err = io.StringIO(), io.StringIO()
    code = run(["reconstruct", "--witness", str(DATA / "witness_anchor_broken.toml")], out, err)
    assert code == 1 and "AnchorContractViolation" in out.getvalue()

    hidden = InnerOuterDerivation(L(2, 1), 3)
    broken = WitnessFamilySpec(hidden, (Perturbation(L(0, 0), L(1, 0), OUTER_D, 1),), validate=False)
    with pytest.raises(AnchorContractViolation):
        reconstruct(broken.two_local(), [])

    def provider(x, y):
        return _NotADerivation(hidden) if x == y == L(-1, 1) else hidden

    with pytest.raises(NotProportional) as info:
        reconstruct(TwoLocalMap(provider), [])
    assert info.value.residual == L(0, 0)

    with pytest.raises(KernelNotAnnihilating):
        load_witness_family(DATA / "witness_bad_kernel.toml")
    return "AnchorContractViolation (exit 1), NotProportional (residual L[0,0]), bad kernel rejected"


def _families(rng):
    yield load_witness_family(DATA / "witness_valid.toml")
    yield load_witness_family(DATA / "witness_kernel_shift.toml")
    yield load_witness_family(DATA / "witness_scaled_kernel.toml")
    for _ in range(3):
        hidden = random_derivation(rng, Window(-3, 3, 3))
        perts = (
            Perturbation(L(0, 0), L(1, 0), KERNEL_K, random_scalar(rng, nonzero=True)),
            Perturbation(L(-1, 1), L(-2, 2), InnerOuterDerivation(L(0, 0) + L(-3, 3)),
                         random_scalar(rng, nonzero=True)),
        )
        yield WitnessFamilySpec(hidden, perts)


@criterion(11, "homogeneity audit, k in {0, -1, 2, 1/2}")
def test_homogeneity():
    rng = make_rng(11)
    w = Window(-3, 3, 3)
    families = 0
    for spec in _families(rng):
        pairs = [(p.x, p.y) for p in spec.perturbations]
        while len(pairs) < 50:
            pairs.append((random_element(rng, w), random_element(rng, w)))
        report = audit_witnesses(spec.two_local(), pairs)
        assert report.ok, report.violations[:1]
        families += 1
    return f"{families} families x 50 samples, 0 violations"


@criterion(12, "parser round trip and fuzz totality")
def test_parser():
    rng = make_rng(12)
    w = Window(-8, 8, 6)
    for _ in range(200):
        x = random_element(rng, w, max_terms=6)
        assert parse_element(format_element(x)) == x
    for _ in range(50):
        D = random_derivation(rng, w)
        assert parse_derivation(format_derivation(D)) == D
    fuzz = random.Random(1212)
    grammar_bytes = b"L[](),+-*/0123456789 id"
    outcomes = {"parsed": 0, "positioned error": 0}
    for n in range(1000):
        size = fuzz.randint(0, 24)
        if n % 2:
            data = bytes(fuzz.choice(grammar_bytes) for _ in range(size))
        else:
            data = bytes(fuzz.randrange(256) for _ in range(size))
        try:
            parse_element(data)
            outcomes["parsed"] += 1
        except (ExprSyntaxError, DomainError) as exc:
            assert exc.offset is not None
            outcomes["positioned error"] += 1
    return f"250 round trips, 1000 fuzz inputs ({outcomes['parsed']} parsed, {outcomes['positioned error']} errors)"


@criterion(13, "eigenvalue and element form checks for Delta = c*K")
def test_form_checks():
    rng = make_rng(13)
    w = Window(-3, 3, 3)
    for c in (1, -3, Fraction(2, 5)):
        delta = TwoLocalMap(lambda x, y, D=c * KERNEL_K: D)
        report = lemma32_form_check(delta, list(w))
        assert report.ok
        for b, xi in report.data["xi"].items():
            if b.i == 0:
                assert xi == 0 and delta.evaluate(L(*b)) == Element()
            else:
                assert xi == -c
        for _ in range(10):
            x = random_element(rng, w) + L(0, 1)
            r = lemma33_form_check(delta, x)
            assert r.ok and r.data["xi"] == -c
        assert lemma33_form_check(delta, L(2, 0) - L(-1, 0)).data["xi"] == 0
    return "xi = -c for c in {1, -3, 2/5}; j = 0 gives exactly 0"


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except BaseException:
                failed += 1
    print("\n".join(acceptance_lines()))
    sys.exit(1 if failed else 0)
