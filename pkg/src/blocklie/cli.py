"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a mathematical property or
contract violation was found (details in the report), 2 for input or usage
errors. Check reports start with a single PASS/FAIL line, followed by the
seed used for any random sampling.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import checks
from .algebra import Element, Window, bracket, cocycle_form
from .derivations import check_leibniz, decompose, find_annihilators
from .errors import (
    AnchorContractViolation,
    BlockLieError,
    DomainError,
    ExprSyntaxError,
    Inconsistent,
    KernelNotAnnihilating,
    MissingAssignment,
    NotProportional,
    PreconditionFailed,
    Underdetermined,
)
from .exprio import (
    format_derivation,
    format_element,
    load_derivation_table,
    load_witness_family,
    parse_derivation,
    parse_element,
)
from .reports import Report
from .sampling import make_rng, random_dense_element, random_element
from .twolocal import (
    audit_witnesses,
    lemma31_constraint_check,
    lemma32_form_check,
    lemma33_form_check,
    lemma34_support_check,
    reconstruct,
    window_probes,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

# violations of a mathematical contract; everything else is bad input
_VIOLATIONS = (
    Inconsistent,
    Underdetermined,
    PreconditionFailed,
    AnchorContractViolation,
    NotProportional,
    KernelNotAnnihilating,
)


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _window(values: Sequence[int] | None, default: tuple[int, int, int]) -> Window:
    a0, a1, im = values if values else default
    try:
        return Window(a0, a1, im)
    except ValueError as exc:
        raise UsageError(f"invalid window {a0} {a1} {im}: {exc}") from None


class _Arg:
    """Remembers which argument a parse error came from, for the diagnostic."""

    def __init__(self, label: str, text: str):
        self.label, self.text = label, text

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if isinstance(exc, (ExprSyntaxError, DomainError)) and getattr(exc, "offset", None) is not None:
            raise UsageError(_caret(self.label, self.text, exc)) from None
        return False


def _caret(label: str, text: str, exc) -> str:
    prefix = text.encode("utf-8")[: exc.offset].decode("utf-8", errors="ignore")
    return f"{label}: {exc}\n  {text}\n  {' ' * len(prefix)}^"


def _element(label: str, text: str) -> Element:
    with _Arg(label, text):
        return parse_element(text)


def _derivation(label: str, text: str):
    with _Arg(label, text):
        return parse_derivation(text)


def _header(report: Report, seed: int) -> list[str]:
    lines = report.lines()
    return [lines[0], f"seed: {seed}"] + lines[1:]


def _fail(exc: BlockLieError, seed: int, extra: Sequence[str] = ()) -> tuple[int, list[str]]:
    lines = [f"FAIL: {type(exc).__name__}: {exc}", f"seed: {seed}"]
    residual = getattr(exc, "residual", None)
    if residual is not None:
        lines.append(f"  residual: {residual}")
    if isinstance(exc, Underdetermined):
        lines += [f"  free direction: {format_derivation(d)}" for d in exc.free_directions]
    return EXIT_VIOLATION, lines + list(extra)


def _report_result(report: Report, seed: int) -> tuple[int, list[str]]:
    return (EXIT_OK if report.ok else EXIT_VIOLATION), _header(report, seed)


# -- subcommands ----------------------------------------------------------

def cmd_bracket(args):
    x, y = _element("x", args.x), _element("y", args.y)
    return EXIT_OK, [format_element(bracket(x, y))]


def cmd_apply(args):
    D = _derivation("--derivation", args.derivation)
    x = _element("x", args.x)
    return EXIT_OK, [format_element(D.apply(x))]


def cmd_cocycle(args):
    x, y = _element("x", args.x), _element("y", args.y)
    return EXIT_OK, [str(cocycle_form(x, y))]


def cmd_check_jacobi(args):
    return _report_result(checks.check_jacobi(_window(args.window, (-3, 3, 2))), args.seed)


def cmd_check_antisym(args):
    return _report_result(checks.check_antisymmetry(_window(args.window, (-3, 3, 2))), args.seed)


def cmd_check_cocycle(args):
    return _report_result(checks.check_cocycle(_window(args.window, (-3, 3, 2))), args.seed)


def cmd_check_virasoro(args):
    a0, a1 = args.range
    if a0 > a1:
        raise UsageError(f"empty range {a0} {a1}")
    return _report_result(checks.check_virasoro(a0, a1), args.seed)


def cmd_check_derivation(args):
    rng = make_rng(args.seed)
    if args.table:
        D = load_derivation_table(args.table)
        window = D.window
        basis = [Element.basis(*b) for b in window]
        pairs = [(x, y) for x in basis for y in basis]
    else:
        D = _derivation("--spec", args.spec)
        window = _window(args.window, (-3, 3, 2))
        pairs = []
    pairs += [(random_element(rng, window), random_element(rng, window)) for _ in range(args.pairs)]
    return _report_result(check_leibniz(D, pairs), args.seed)


def cmd_decompose(args):
    T = load_derivation_table(args.table)
    search = _window(args.search, (T.window.alpha_min, T.window.alpha_max, T.window.i_max))
    try:
        D = decompose(T, search)
    except (Inconsistent, Underdetermined) as exc:
        return _fail(exc, args.seed)
    return EXIT_OK, [
        f"PASS: table matches a unique derivation on {T.window}",
        f"seed: {args.seed}",
        f"search: {search}",
        f"derivation: {format_derivation(D)}",
    ]


def cmd_annihilators(args):
    targets = [_element("--targets", t.strip()) for t in args.targets.split(";")]
    search = _window(args.search, (-2, 2, 2))
    basis = find_annihilators(targets, search)
    lines = [
        f"PASS: annihilator space has dimension {len(basis)}",
        f"seed: {args.seed}",
        f"search: {search}",
        "targets: " + "; ".join(format_element(t) for t in targets),
    ]
    lines += [f"  {format_derivation(D)}" for D in basis]
    return EXIT_OK, lines


def cmd_lemma31(args):
    if args.j < 0:
        raise UsageError("--j must be nonnegative")
    D = _derivation("--spec", args.spec)
    return _report_result(lemma31_constraint_check(args.beta, args.j, D), args.seed)


def cmd_lemma34(args):
    if args.p < 1:
        raise UsageError("--p must be a positive integer")
    D = _derivation("--spec", args.spec)
    return _report_result(lemma34_support_check(args.p, D), args.seed)


def cmd_lemma32(args):
    delta = load_witness_family(args.witness).two_local()
    samples = list(_window(args.sample_window, (-3, 3, 3)))
    return _report_result(lemma32_form_check(delta, samples), args.seed)


def cmd_lemma33(args):
    delta = load_witness_family(args.witness).two_local()
    if args.x:
        xs = [_element("--x", t) for t in args.x]
    else:
        rng = make_rng(args.seed)
        window = _window(args.sample_window, (-3, 3, 3))
        xs = [random_element(rng, window) for _ in range(args.samples)]
    combined = Report("eigenvalue form on elements", unit="elements")
    for x in xs:
        r = lemma33_form_check(delta, x)
        combined.checked += 1
        combined.violations += r.violations
        combined.notes[format_element(x)] = f"xi = {r.notes['xi']}"
    return _report_result(combined, args.seed)


def cmd_audit(args):
    delta = load_witness_family(args.witness).two_local()
    rng = make_rng(args.seed)
    window = _window(args.window, (-3, 3, 2))
    pairs = [(random_element(rng, window), random_element(rng, window)) for _ in range(args.pairs)]
    return _report_result(audit_witnesses(delta, pairs), args.seed)


def cmd_reconstruct(args):
    # kernels are not validated at load: the anchor check below must see the
    # provider exactly as written
    spec = load_witness_family(args.witness, validate=False)
    delta = spec.two_local()
    rng = make_rng(args.seed)
    window = _window(args.probe_window, (-3, 3, 2))
    dense = [random_dense_element(rng, window) for _ in range(args.dense)]
    try:
        result = reconstruct(delta, window_probes(window, dense))
    except (AnchorContractViolation, NotProportional) as exc:
        return _fail(exc, args.seed)
    report = result.verification
    report.title = f"reconstruction agreement on {window} plus {args.dense} dense probes"
    pairs = [(p.x, p.y) for p in spec.perturbations]
    audit = audit_witnesses(delta, pairs, factors=())
    report.checked += audit.checked
    report.violations += audit.violations
    return _report_result(report, args.seed)


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for random sampling (default 0)")

    parser = _ArgumentParser(prog="blocklie", description="Exact computations in the Block-type Lie algebra.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    def window_arg(p, flag: str, help: str):
        p.add_argument(flag, nargs=3, type=int, metavar=("A_MIN", "A_MAX", "I_MAX"), help=help)

    p = add("bracket", cmd_bracket, "bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")

    p = add("apply", cmd_apply, "apply ad(a) + lambda*d to an element")
    p.add_argument("--derivation", required=True, metavar="SPEC")
    p.add_argument("x")

    p = add("cocycle", cmd_cocycle, "central-extension cocycle of two elements")
    p.add_argument("x")
    p.add_argument("y")

    for name, fn, what in (
        ("check-jacobi", cmd_check_jacobi, "Jacobi identity on all basis triples"),
        ("check-antisym", cmd_check_antisym, "antisymmetry on all basis pairs"),
        ("check-cocycle", cmd_check_cocycle, "cocycle antisymmetry and identity"),
    ):
        p = add(name, fn, what)
        window_arg(p, "--window", "basis window (default -3 3 2)")

    p = add("check-virasoro", cmd_check_virasoro, "Virasoro law on the i = 0 part")
    p.add_argument("--range", nargs=2, type=int, default=(-10, 10), metavar=("A_MIN", "A_MAX"))

    p = add("check-derivation", cmd_check_derivation, "Leibniz rule for a table or a spec")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", metavar="FILE")
    g.add_argument("--spec", metavar="SPEC")
    p.add_argument("--pairs", type=int, default=100, help="random element pairs (default 100)")
    window_arg(p, "--window", "sampling window for --spec (default -3 3 2)")

    p = add("decompose", cmd_decompose, "recover ad(a) + lambda*d from a table")
    p.add_argument("--table", required=True, metavar="FILE")
    window_arg(p, "--search", "support window for a (default: the table window)")

    p = add("annihilators", cmd_annihilators, "derivations killing every target")
    p.add_argument("--targets", required=True, help="elements separated by ';'")
    window_arg(p, "--search", "support window for a (default -2 2 2)")

    p = add("lemma31", cmd_lemma31, "support constraints for a derivation killing L[beta,j]")
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--spec", required=True)

    p = add("lemma34", cmd_lemma34, "support filter for a derivation killing L[p,0] + L[-2p,2p]")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--spec", required=True)

    p = add("lemma32", cmd_lemma32, "eigenvalue form of Delta on basis vectors")
    p.add_argument("--witness", required=True, metavar="FILE")
    window_arg(p, "--sample-window", "basis vectors to sample (default -3 3 3)")

    p = add("lemma33", cmd_lemma33, "eigenvalue form of Delta on elements")
    p.add_argument("--witness", required=True, metavar="FILE")
    p.add_argument("--x", action="append", metavar="ELEMENT", help="element to test (repeatable)")
    p.add_argument("--samples", type=int, default=20, help="random elements when no --x (default 20)")
    window_arg(p, "--sample-window", "window for random elements (default -3 3 3)")

    p = add("audit", cmd_audit, "witness contract and homogeneity audit")
    p.add_argument("--witness", required=True, metavar="FILE")
    p.add_argument("--pairs", type=int, default=50)
    window_arg(p, "--window", "sampling window (default -3 3 2)")

    p = add("reconstruct", cmd_reconstruct, "rebuild the global derivation from a witness family")
    p.add_argument("--witness", required=True, metavar="FILE")
    window_arg(p, "--probe-window", "basis probes (default -3 3 2)")
    p.add_argument("--dense", type=int, default=10, help="random dense probes (default 10)")

    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    seed = 0
    try:
        args = build_parser().parse_args(argv)
        seed = args.seed
        code, lines = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except _VIOLATIONS as exc:
        code, lines = _fail(exc, seed)
    except (ExprSyntaxError, DomainError, MissingAssignment) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    for line in lines:
        print(line, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
