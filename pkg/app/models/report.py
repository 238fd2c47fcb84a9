"""Report and Finding: the JSON every command emits."""

from __future__ import annotations

import json
from typing import Any, Literal

from pydantic import BaseModel, Field, computed_field

from app.algebra.checks import CheckReport

FindingStatus = Literal["ok", "violation", "warn"]


def plain(value: Any) -> Any:
    """JSON-ready copy: dicts, lists, str, int, bool and None only; everything else is str()."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


class Finding(BaseModel):
    check: str
    status: FindingStatus
    detail: str = ""
    data: dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    command: str
    params: dict[str, Any] = Field(default_factory=dict)
    findings: list[Finding] = Field(default_factory=list)
    artifacts: dict[str, Any] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def status(self) -> Literal["ok", "violations", "warn"]:
        if any(f.status == "violation" for f in self.findings):
            return "violations"
        if any(f.status == "warn" for f in self.findings):
            return "warn"
        return "ok"

    @property
    def exit_code(self) -> int:
        return 1 if self.status == "violations" else 0

    def add_check(self, report: CheckReport) -> None:
        """One finding for the report, plus one warn finding per warning it carries."""
        data = report.to_dict()
        warnings = data.pop("warnings")
        if report.ok:
            detail = f"{report.checked} identities checked"
        else:
            first = report.violations[0]
            detail = f"{len(report.violations)} violated; first: {first.check} at {', '.join(map(str, first.where))}"
        self.findings.append(Finding(check=report.name, status="ok" if report.ok else "violation",
                                     detail=detail, data=data))
        for w in warnings:
            self.findings.append(Finding(check=report.name, status="warn", detail=w))

    def add_warning(self, check: str, detail: str) -> None:
        self.findings.append(Finding(check=check, status="warn", detail=detail))

    def add_violation(self, check: str, detail: str, data: dict[str, Any] | None = None) -> None:
        self.findings.append(Finding(check=check, status="violation", detail=detail, data=data or {}))

    def to_json(self) -> str:
        return json.dumps(plain(self.model_dump()), indent=2, sort_keys=True, ensure_ascii=False)
