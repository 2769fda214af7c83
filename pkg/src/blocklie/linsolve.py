"""Exact sparse Gauss-Jordan elimination over the Gaussian rationals.

Rows are dicts ``column -> Scalar`` over columns ``0 .. ncols-1``; the
right-hand side is carried alongside. Rows are folded into a reduced
row-echelon form one at a time, always pivoting on the lowest column of a
freshly reduced row. Since reduced row-echelon form is unique, the result
(and any nullspace basis read off it) depends only on the row space and the
column order, never on the order equations arrive in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import ONE, ZERO, Scalar

Row = dict


@dataclass
class RREF:
    ncols: int
    # pivot column -> (row with 1 at the pivot and 0 at every other pivot, rhs)
    pivots: dict[int, tuple[Row, Scalar]] = field(default_factory=dict)
    inconsistent: bool = False

    def add_equation(self, row: Row, rhs: Scalar = ZERO) -> None:
        """Fold ``sum row[c] * x_c = rhs`` into the echelon form."""
        row = {c: Scalar.coerce(v) for c, v in row.items() if v}
        rhs = Scalar.coerce(rhs)
        for c in [c for c in row if c in self.pivots]:
            v = row.get(c)
            if not v:
                continue
            prow, prhs = self.pivots[c]
            _axpy(row, -v, prow)
            rhs = rhs - v * prhs
        if not row:
            if rhs:
                self.inconsistent = True
            return
        p = min(row)
        inv = row[p].inverse()
        row = {c: v * inv for c, v in row.items()}
        row[p] = ONE
        rhs = rhs * inv
        for q, (qrow, qrhs) in self.pivots.items():
            v = qrow.get(p)
            if v:
                _axpy(qrow, -v, row)
                self.pivots[q] = (qrow, qrhs - v * rhs)
        self.pivots[p] = (row, rhs)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def particular_solution(self) -> list[Scalar] | None:
        """Solution with every free variable set to zero, or None if inconsistent."""
        if self.inconsistent:
            return None
        x = [ZERO] * self.ncols
        for p, (_, rhs) in self.pivots.items():
            x[p] = rhs
        return x

    def nullspace(self) -> list[list[Scalar]]:
        """Basis of the homogeneous solution space, one vector per free column.

        The vector for free column f has x_f = 1, every other free variable 0.
        Vectors are ordered by f.
        """
        basis = []
        for f in self.free_columns():
            x = [ZERO] * self.ncols
            x[f] = ONE
            for p, (prow, _) in self.pivots.items():
                v = prow.get(f)
                if v:
                    x[p] = -v
            basis.append(x)
        return basis

    def rows(self) -> list[tuple[int, Row, Scalar]]:
        return [(p, dict(r), s) for p, (r, s) in sorted(self.pivots.items())]


def _axpy(target: Row, k: Scalar, source: Row) -> None:
    """target += k * source, dropping entries that cancel."""
    for c, v in source.items():
        s = target.get(c)
        s = k * v if s is None else s + k * v
        if s:
            target[c] = s
        else:
            target.pop(c, None)


def solve(ncols: int, equations) -> RREF:
    """Reduce an iterable of ``(row, rhs)`` pairs."""
    r = RREF(ncols)
    for row, rhs in equations:
        r.add_equation(row, rhs)
    return r
