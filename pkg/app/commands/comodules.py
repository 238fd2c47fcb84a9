"""Chain complexes as graded comodules over F(k[d]/d², k[d]/d²)."""

from __future__ import annotations

import re

from app.algebra.errors import InputError
from app.algebra.sweedler import chain_to_comodule, dual_number_presentation
from app.commands import Arg, command
from app.commands.common import new_report
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter

TWO_TERM = '{"dims": [1, 1], "d": [[[1]]]}'


def _shift(text: str) -> int:
    m = re.fullmatch(r"\s*i\s*([+-])\s*(\d+)\s*", text)
    if m is None:
        raise InputError("--exponent must look like i-1 or i+1", offset=0, text=text)
    return int(m.group(2)) * (1 if m.group(1) == "+" else -1)


@command("chain-comodule", "coaction m ↦ g1^i⊗m + g0·g1^(exponent)⊗dm on a chain complex",
         Arg("--complex", "chain complex JSON {dims, d}", TWO_TERM),
         Arg("--exponent", "exponent of g1 in the differential term", "i-1"))
def chain_comodule(job: JobSpec) -> Report:
    report = new_report(job)
    C = converter.complex_from_json(converter.load_json(job.param("complex", TWO_TERM)))
    shift = _shift(job.param("exponent", "i-1"))
    F = dual_number_presentation(job.bound, job.rule_cap)
    comodule = chain_to_comodule(C, F, shift)
    report.add_check(comodule.check())
    report.artifacts["comodule"] = comodule.to_dict()

    has_differential = any(v for m in C.d for row in m for v in row)
    if shift == -1 and has_differential:
        plus_one = chain_to_comodule(C, F, +1)
        if not plus_one.check().ok:
            report.add_warning(
                "exponent i+1",
                "the exponent i+1 fails coassociativity on this complex; i-1 is forced by Δg0 = g1⊗g0 + g0⊗1",
            )
    return report
