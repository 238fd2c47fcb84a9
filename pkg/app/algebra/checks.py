"""Report-valued verification results shared by every engine module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    check: str
    where: tuple[Any, ...]
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "where": [str(w) for w in self.where], "detail": self.detail}


@dataclass
class CheckReport:
    """Collects every violated identity instead of stopping at the first one."""

    name: str
    violations: list[Violation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, where: tuple[Any, ...], detail: str = "") -> None:
        self.violations.append(Violation(check, where, detail))

    def tick(self, n: int = 1) -> None:
        self.checked += n

    def warn(self, message: str) -> None:
        if message not in self.warnings:
            self.warnings.append(message)

    def note(self, key: str, value: Any) -> None:
        self.notes[key] = value

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.violations.extend(other.violations)
        for w in other.warnings:
            self.warn(w)
        self.checked += other.checked
        for k, v in other.notes.items():
            self.notes.setdefault(k, v)
        return self

    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violations": [v.to_dict() for v in self.violations],
            "warnings": list(self.warnings),
            "notes": self.notes,
        }
