"""Exception hierarchy shared by every blocklie module."""

from __future__ import annotations


class BlockLieError(Exception):
    """Base class for all library errors."""


# -- expression layer ------------------------------------------------------

class ExprSyntaxError(BlockLieError, ValueError):
    """Malformed expression text.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of token kinds that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected=(), line: int | None = None):
        self.offset = offset
        self.expected = frozenset(expected)
        self.line = line
        self.reason = message
        super().__init__(self._render())

    def _render(self) -> str:
        where = f"offset {self.offset}"
        if self.line is not None:
            where = f"line {self.line}, {where}"
        text = f"{where}: {self.reason}"
        if self.expected:
            text += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        return text

    def at_line(self, line: int) -> "ExprSyntaxError":
        return ExprSyntaxError(self.reason, self.offset, self.expected, line)


class DomainError(BlockLieError, ValueError):
    """A syntactically valid value outside the algebra's index set."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        super().__init__(message if offset is None else f"offset {offset}: {message}")


class MissingAssignment(BlockLieError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"derivation table has no assignment for L[{index.alpha},{index.i}]")


class KernelNotAnnihilating(BlockLieError, ValueError):
    def __init__(self, pair, residual):
        self.pair = pair
        self.residual = residual
        super().__init__(f"perturbation kernel does not annihilate its pair {pair}: residual {residual}")


# -- derivation solver -----------------------------------------------------

class Inconsistent(BlockLieError):
    """No ad(a) + lambda*d with support in the search window matches the table."""

    def __init__(self, message: str = "linear system has no solution"):
        super().__init__(message)


class Underdetermined(BlockLieError):
    """The window does not pin down all unknowns; ``free_directions`` spans the ambiguity."""

    def __init__(self, free_directions):
        self.free_directions = list(free_directions)
        super().__init__(f"{len(self.free_directions)} free direction(s) remain")


# -- 2-local checks --------------------------------------------------------

class PreconditionFailed(BlockLieError):
    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)


class AnchorContractViolation(BlockLieError):
    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)


class NotProportional(BlockLieError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"anchor-corrected residual at L[-1,1] is not a multiple of L[-1,1]: {residual}")
