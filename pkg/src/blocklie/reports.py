"""Check reports. Violations are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    where: str
    message: str
    residual: Any = None

    def __str__(self) -> str:
        text = f"{self.where}: {self.message}"
        if self.residual is not None:
            text += f" [residual {self.residual}]"
        return text


@dataclass
class Report:
    title: str
    checked: int = 0
    unit: str = "checks"
    violations: list[Violation] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)
    # machine-readable results; not printed
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, where: str, message: str, residual=None) -> None:
        self.violations.append(Violation(where, message, residual))

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status}: {len(self.violations)} violations over {self.checked} {self.unit}"
        if self.skipped:
            text += f" ({len(self.skipped)} skipped)"
        return text

    def lines(self) -> list[str]:
        out = [self.summary(), f"check: {self.title}"]
        for k, v in self.notes.items():
            out.append(f"  {k}: {v}")
        for v in self.violations:
            out.append(f"  violation {v}")
        for s in self.skipped:
            out.append(f"  skipped {s}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
