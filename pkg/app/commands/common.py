"""Helpers shared by the command groups."""

from __future__ import annotations

import logging
from typing import Any

from app.algebra.errors import InputError
from app.algebra.exactnum import FieldSpec, Matrix
from app.algebra.finalg import FinAlgebra
from app.algebra.sweedler import SweedlerPresentation, build_F
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter

log = logging.getLogger(__name__)

COMPLEX_CASE = "quotient_poly(x^2+1)"


def new_report(job: JobSpec) -> Report:
    return Report(command=job.command, params={k: v for k, v in job.params.items() if v is not None})


def field_of(job: JobSpec) -> FieldSpec:
    return converter.load_field(job.param("field"))


def algebra(job: JobSpec, key: str, default: str = COMPLEX_CASE, same: FinAlgebra | None = None) -> FinAlgebra:
    text = job.param(key, default)
    if text == "same":
        if same is None:
            raise InputError(f"--{key} same: nothing to copy")
        return same
    return converter.load_algebra(text, field_of(job))


def presentation(job: JobSpec, A: FinAlgebra, B: FinAlgebra, prefix: str = "f", verify: bool = True) -> SweedlerPresentation:
    log.info("building F(%s, %s) at bound %d", A.name, B.name, job.bound)
    return build_F(A, B, job.bound, job.rule_cap, prefix=prefix, verify=verify)


def dmax(job: JobSpec) -> int:
    return int(job.param("dmax", job.bound))


def show_matrix(m: Matrix) -> list[list[str]]:
    return converter.matrix_to_json(m)


def json_param(job: JobSpec, key: str) -> Any:
    text = job.param(key)
    return None if text is None else converter.load_json(text)
