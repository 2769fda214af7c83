"""Text syntax for scalars, elements and derivations, plus the two file formats.

Grammar (whitespace is insignificant between tokens)::

    element  := term (('+' | '-') term)*
    term     := (scalar '*')? basis | scalar
    basis    := 'L' '[' integer ',' nonneg-integer ']'
    scalar   := rational | '(' rational (('+'|'-') rational? 'i')? ')'
    rational := integer ('/' positive-integer)?
    spec     := 'ad' '(' element ')' (('+'|'-') scalar '*'? 'd')? | scalar '*'? 'd'

A leading sign is accepted on any term, so "-L[1,0]" parses. A bare scalar
term has no basis vector to multiply and is only meaningful as 0. In a
derivation spec a bare 'd' stands for 1*d.

Table files::

    # comment
    window <alpha_min> <alpha_max> <i_max>
    L[b,j] -> <element>

Witness files are TOML with ``hidden`` (a derivation spec) and an array
``perturbations`` of tables ``{x, y, kernel, coeff}``.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BasisIndex, Element, Window
from .derivations import DerivationTable, InnerOuterDerivation
from .errors import DomainError, ExprSyntaxError, MissingAssignment
from .scalar import ONE, ZERO, Scalar
from .twolocal import Perturbation, WitnessFamilySpec

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


# -- lexer -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', a punctuation character, or 'end'
    text: str
    offset: int  # byte offset into the UTF-8 encoding


_PUNCT = set("+-*/()[],")
_KIND_NAMES = {"int": "integer", "end": "end of input"}


def _kind_label(kind: str) -> str:
    return _KIND_NAMES.get(kind, repr(kind))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    byte = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n":
            pos += 1
            byte += 1
            continue
        start, start_byte = pos, byte
        if ch.isascii() and ch.isdigit():
            while pos < n and text[pos].isascii() and text[pos].isdigit():
                pos += 1
            kind = "int"
        elif ch.isascii() and ch.isalpha():
            while pos < n and text[pos].isascii() and text[pos].isalpha():
                pos += 1
            kind = "ident"
        elif ch in _PUNCT:
            pos += 1
            kind = ch
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", start_byte)
        piece = text[start:pos]
        byte = start_byte + len(piece)  # ASCII-only tokens
        tokens.append(Token(kind, piece, start_byte))
    tokens.append(Token("end", "", byte))
    return tokens


# -- parser ----------------------------------------------------------------

class _Parser:
    """Recursive descent with one token of lookahead."""

    def __init__(self, text: str | bytes):
        if isinstance(text, (bytes, bytearray)):
            try:
                text = bytes(text).decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ExprSyntaxError("input is not valid UTF-8", exc.start) from None
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, *expected: str) -> ExprSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        return ExprSyntaxError(f"unexpected {found}", t.offset, expected)

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            raise self.error(repr(text) if text else _kind_label(kind))
        return self.advance()

    def finish(self) -> None:
        if not self.at("end"):
            raise self.error("'+'", "'-'", "end of input")

    # rational := integer ('/' positive-integer)?   (integer may carry '-')
    def rational(self) -> Fraction:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        num = self.integer()
        value = Fraction(num)
        if self.at("/"):
            self.advance()
            t = self.tok
            den = self.integer()
            if den == 0:
                raise ExprSyntaxError("denominator must be positive", t.offset, {"positive integer"})
            value = Fraction(num, den)
        return -value if neg else value

    def scalar(self) -> Scalar:
        if self.at("("):
            self.advance()
            re = self.rational()
            im = Fraction(0)
            if self.at("+") or self.at("-"):
                sign = -1 if self.advance().kind == "-" else 1
                if self.at("ident", "i"):
                    im = Fraction(1)
                else:
                    if not self.at("int"):
                        raise self.error("integer", "'i'")
                    im = self.rational()
                    if not self.at("ident", "i"):
                        raise self.error("'i'")
                self.advance()
                im = sign * im
            self.expect(")")
            return Scalar(re, im)
        if self.at("int") or self.at("-"):
            return Scalar(self.rational())
        raise self.error("integer", "'('")

    def basis(self) -> BasisIndex:
        self.expect("ident", "L")
        self.expect("[")
        alpha = self.rational_integer()
        self.expect(",")
        t = self.tok
        i = self.rational_integer()
        self.expect("]")
        if i < 0:
            raise DomainError(f"second index of L[{alpha},{i}] must be nonnegative", t.offset)
        return BasisIndex(alpha, i)

    def integer(self) -> int:
        t = self.expect("int")
        try:
            return int(t.text)
        except ValueError:  # exceeds the interpreter's digit limit
            raise ExprSyntaxError("integer literal too long", t.offset) from None

    def rational_integer(self) -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        v = self.integer()
        return -v if neg else v

    def term(self, acc: dict, sign: int) -> None:
        if self.at("-"):
            self.advance()
            sign = -sign
        elif self.at("+"):
            self.advance()
        if self.at("ident", "L"):
            _accumulate(acc, self.basis(), Scalar(sign))
            return
        t = self.tok
        if not (self.at("int") or self.at("(")):
            raise self.error("'L'", "integer", "'('")
        c = self.scalar()
        if self.at("*"):
            self.advance()
            if not self.at("ident", "L"):
                raise self.error("'L'")
            _accumulate(acc, self.basis(), c * sign)
        elif c:
            raise DomainError(f"bare scalar {c} is not an element (only 0 is)", t.offset)

    def element(self) -> Element:
        acc: dict[BasisIndex, Scalar] = {}
        self.term(acc, 1)
        while self.at("+") or self.at("-"):
            sign = -1 if self.advance().kind == "-" else 1
            self.term(acc, sign)
        return Element._wrap({b: c for b, c in acc.items() if c})

    def derivation(self) -> InnerOuterDerivation:
        if self.at("ident", "ad"):
            self.advance()
            self.expect("(")
            inner = self.element()
            self.expect(")")
            lam = ZERO
            if self.at("+") or self.at("-"):
                sign = -1 if self.advance().kind == "-" else 1
                lam = self.outer_coeff() * sign
            return InnerOuterDerivation(inner, lam)
        if self.at("ident", "d") or self.at("int") or self.at("(") or self.at("-"):
            sign = 1
            if self.at("-"):
                self.advance()
                sign = -1
            return InnerOuterDerivation(Element._wrap({}), self.outer_coeff() * sign)
        raise self.error("'ad'", "'d'", "integer", "'('")

    def outer_coeff(self) -> Scalar:
        if self.at("ident", "d"):
            self.advance()
            return ONE
        c = self.scalar()
        if self.at("*"):
            self.advance()
        self.expect("ident", "d")
        return c


def _accumulate(acc: dict, b: BasisIndex, c: Scalar) -> None:
    s = acc.get(b)
    acc[b] = c if s is None else s + c


def parse_element(text: str | bytes) -> Element:
    p = _Parser(text)
    x = p.element()
    p.finish()
    return x


def parse_scalar(text: str | bytes) -> Scalar:
    p = _Parser(text)
    c = p.scalar()
    p.finish()
    return c


def parse_basis(text: str | bytes) -> BasisIndex:
    p = _Parser(text)
    b = p.basis()
    p.finish()
    return b


def parse_derivation(text: str | bytes) -> InnerOuterDerivation:
    p = _Parser(text)
    D = p.derivation()
    p.finish()
    return D


# -- formatting ------------------------------------------------------------

def format_scalar(c: Scalar) -> str:
    return str(Scalar.coerce(c))


def format_basis(b: BasisIndex) -> str:
    return f"L[{b.alpha},{b.i}]"


def format_element(x: Element) -> str:
    """Canonical text: terms in (alpha, i) order, unit coefficients omitted."""
    parts: list[str] = []
    for b, c in x.items():
        neg = c.is_real() and c.re < 0
        mag = -c if neg else c
        body = format_basis(b) if mag == ONE else f"{mag}*{format_basis(b)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def format_derivation(D: InnerOuterDerivation) -> str:
    lam = D.lam
    if not lam:
        return f"ad({format_element(D.inner)})"
    neg = lam.is_real() and lam.re < 0
    mag = -lam if neg else lam
    if not D.inner:
        return f"{lam}*d"
    return f"ad({format_element(D.inner)}) {'-' if neg else '+'} {mag}*d"


# -- table files -----------------------------------------------------------

def parse_derivation_table(text: str) -> DerivationTable:
    window = None
    assignments: dict[BasisIndex, Element] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if window is None:
            fields = line.split()
            if len(fields) != 4 or fields[0] != "window":
                raise ExprSyntaxError("expected header 'window <alpha_min> <alpha_max> <i_max>'", 0,
                                      {"'window'"}, lineno)
            try:
                a0, a1, im = (int(f) for f in fields[1:])
                window = Window(a0, a1, im)
            except ValueError as exc:
                raise ExprSyntaxError(f"bad window header: {exc}", 0, (), lineno) from None
            continue
        if "->" not in line:
            raise ExprSyntaxError("expected 'L[b,j] -> <element>'", len(line.encode()), {"'->'"}, lineno)
        lhs, rhs = line.split("->", 1)
        # error offsets are reported relative to the start of the line
        try:
            b = parse_basis(lhs)
        except ExprSyntaxError as exc:
            raise exc.at_line(lineno) from None
        try:
            value = parse_element(rhs)
        except ExprSyntaxError as exc:
            shifted = ExprSyntaxError(exc.reason, exc.offset + len(lhs.encode()) + 2, exc.expected)
            raise shifted.at_line(lineno) from None
        except DomainError as exc:
            raise DomainError(f"line {lineno}: {exc}") from None
        if b not in window:
            raise DomainError(f"line {lineno}: L[{b.alpha},{b.i}] lies outside {window}")
        if b in assignments:
            raise DomainError(f"line {lineno}: duplicate assignment for L[{b.alpha},{b.i}]")
        assignments[b] = value
    if window is None:
        raise ExprSyntaxError("missing window header", 0, {"'window'"}, 1)
    for b in window:
        if b not in assignments:
            raise MissingAssignment(b)
    return DerivationTable(window, assignments)


def load_derivation_table(path: str | os.PathLike) -> DerivationTable:
    with open(path, encoding="utf-8") as fh:
        return parse_derivation_table(fh.read())


def format_derivation_table(T: DerivationTable) -> str:
    w = T.window
    lines = [f"window {w.alpha_min} {w.alpha_max} {w.i_max}"]
    for b in w:
        lines.append(f"{format_basis(b)} -> {format_element(T.assignments[b])}")
    return "\n".join(lines) + "\n"


# -- witness files ---------------------------------------------------------

def _scalar_field(value, where: str) -> Scalar:
    if isinstance(value, bool):
        raise DomainError(f"{where}: expected a scalar, got a boolean")
    if isinstance(value, int):
        return Scalar(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise DomainError(f"{where}: expected an integer or scalar string, got {type(value).__name__}")


def _str_field(doc: dict, key: str, where: str) -> str:
    if key not in doc:
        raise DomainError(f"{where}: missing key '{key}'")
    value = doc[key]
    if not isinstance(value, str):
        raise DomainError(f"{where}: '{key}' must be a string")
    return value


def parse_witness_family(text: str, validate: bool = True) -> WitnessFamilySpec:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        lineno = getattr(exc, "lineno", None)
        raise ExprSyntaxError(f"invalid TOML: {exc}", 0, (), lineno) from None
    hidden = parse_derivation(_str_field(doc, "hidden", "witness file"))
    perturbations = []
    for n, entry in enumerate(doc.get("perturbations", [])):
        where = f"perturbations[{n}]"
        if not isinstance(entry, dict):
            raise DomainError(f"{where}: expected a table")
        x = parse_element(_str_field(entry, "x", where))
        y = parse_element(_str_field(entry, "y", where))
        kernel = parse_derivation(_str_field(entry, "kernel", where))
        coeff = _scalar_field(entry.get("coeff", 1), where)
        perturbations.append(Perturbation(x, y, kernel, coeff))
    return WitnessFamilySpec(hidden, tuple(perturbations), validate=validate)


def load_witness_family(path: str | os.PathLike, validate: bool = True) -> WitnessFamilySpec:
    with open(path, encoding="utf-8") as fh:
        return parse_witness_family(fh.read(), validate=validate)


def _toml_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_witness_family(spec: WitnessFamilySpec) -> str:
    lines = [f"hidden = {_toml_str(format_derivation(spec.hidden))}"]
    for p in spec.perturbations:
        lines += [
            "",
            "[[perturbations]]",
            f"x = {_toml_str(format_element(p.x))}",
            f"y = {_toml_str(format_element(p.y))}",
            f"kernel = {_toml_str(format_derivation(p.kernel))}",
            f"coeff = {_toml_str(format_scalar(p.coeff))}",
        ]
    return "\n".join(lines) + "\n"
