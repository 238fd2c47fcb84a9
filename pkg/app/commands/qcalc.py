"""Dual presentations: T((Q[x]/p)°)/J, its agreement with the matrix method, and H⁻."""

from __future__ import annotations

from app.algebra.checks import CheckReport
from app.algebra.sweedler import pareigis_check, qcalc_presentation, verify_qcalc_equivalence
from app.commands import Arg, command
from app.commands.common import dmax, new_report
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter

_P = Arg("--p", "monic rational polynomial in x", "x^2+1")


@command("qcalc", "presentation T((Q[x]/p)°)/J from the dual coalgebra", _P,
         Arg("--dmax", "highest degree for the dimension sequence (default: the bound)", type=int))
def qcalc(job: JobSpec) -> Report:
    report = new_report(job)
    Q = qcalc_presentation(converter.parse_poly(job.param("p", "x^2+1")), job.bound, job.rule_cap)
    check = CheckReport("dual presentation relations reduce to 0")
    for rel in Q.relations:
        check.tick()
        if Q.system.normal_form(rel):
            check.add("relation", (Q.system.format(rel),))
    report.add_check(check)
    report.artifacts["presentation"] = Q.to_dict()
    report.artifacts["dimension_sequence"] = Q.system.dimension_sequence(dmax(job))
    return report


@command("verify-qcalc", "α_r ↦ f_(x,r) maps the dual presentation onto the matrix-method one", _P)
def verify_qcalc(job: JobSpec) -> Report:
    report = new_report(job)
    check = verify_qcalc_equivalence(converter.parse_poly(job.param("p", "x^2+1")), job.bound, job.rule_cap)
    report.add_check(check)
    report.artifacts["sequences"] = {
        "dual": check.notes.get("dual presentation sequence"),
        "matrix": check.notes.get("matrix method sequence"),
    }
    return report


@command("pareigis", "compare F(k[d]/d², k[d]/d²) with the Pareigis sub-bialgebra H⁻")
def pareigis(job: JobSpec) -> Report:
    report = new_report(job)
    check = pareigis_check(job.bound, job.rule_cap)
    report.add_check(check)
    report.artifacts["sequences"] = {"F": check.notes.get("F sequence"), "H-": check.notes.get("H⁻ sequence")}
    return report
