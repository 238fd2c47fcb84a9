"""JobSpec: one validated CLI invocation."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils import converter

CommandName = Literal[
    "present",
    "comul",
    "counit",
    "hilbert",
    "map-extension",
    "qcalc",
    "verify-qcalc",
    "pareigis",
    "chain-comodule",
    "rep-measure",
    "galois",
    "monoid",
    "loop",
    "dual",
    "convolution",
    "verify-measuring",
    "dmodule",
    "tau",
    "d-extension",
]

ALGEBRA_PARAMS = ("A", "B", "C", "S", "second", "algebra")
COALGEBRA_PARAMS = ("H", "coalgebra")
MODULE_PARAMS = ("M", "N", "M2", "V")
POLY_PARAMS = ("p",)


class JobSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: CommandName
    params: dict[str, Any] = Field(default_factory=dict)
    bound: int = Field(8, ge=1)
    rule_cap: int = Field(10000, ge=1)
    output: Path | None = None
    save: bool = False
    xlsx: bool = False

    @model_validator(mode="after")
    def _check_params(self) -> "JobSpec":
        """Catalog names and polynomial syntax fail here, before any computation."""
        for key, value in self.params.items():
            if value is None:
                continue
            if key in ALGEBRA_PARAMS:
                converter.check_spec(value, "algebra")
            elif key in COALGEBRA_PARAMS:
                converter.check_spec(value, "coalgebra")
            elif key in MODULE_PARAMS:
                converter.check_spec(value, "module")
            elif key in POLY_PARAMS:
                converter.parse_poly(value)
            elif key == "field":
                converter.load_field(value)
        return self

    def param(self, key: str, default: Any = None) -> Any:
        value = self.params.get(key)
        return default if value is None else value
