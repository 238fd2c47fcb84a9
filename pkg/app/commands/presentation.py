"""F(A,B) commands: presentation, bialgebra structure, dimension sequences and F(σ)."""

from __future__ import annotations

import logging

from app.algebra.checks import CheckReport
from app.algebra.errors import InputError
from app.algebra.exactnum import CentralPoly
from app.algebra.finalg import conjugation_algebra, dual_numbers, regular_representation
from app.algebra.sweedler import (
    F_of_extension,
    MatrixTarget,
    bialgebra_check,
    comultiplication,
    complex_family,
    conjugation_check,
    lambda_family,
    map_presentation,
    quoted_relation_warning,
    representation_to_measuring,
)
from app.commands import Arg, command
from app.commands.common import algebra, dmax, field_of, json_param, new_report, presentation, show_matrix
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter

log = logging.getLogger(__name__)

_A = Arg("--A", "source algebra: catalog spec or JSON", "quotient_poly(x^2+1)")
_B = Arg("--B", "target algebra, or 'same'", "same")
_FIELD = Arg("--field", "base field: QQ or a modulus such as t^2+1")
_DMAX = Arg("--dmax", "highest degree for the dimension sequence (default: the bound)", type=int)


@command("present", "build F(A,B) = A ◁ B° and verify its invariants", _A, _B, _FIELD, _DMAX,
         Arg("--prefix", "generator prefix", "f"))
def present(job: JobSpec) -> Report:
    report = new_report(job)
    A = algebra(job, "A")
    B = algebra(job, "B", same=A)
    F = presentation(job, A, B, prefix=job.param("prefix", "f"))
    report.add_check(F.report)
    report.artifacts["presentation"] = F.to_dict()
    report.artifacts["dimension_sequence"] = F.dimension_sequence(dmax(job))
    if A == B and A == dual_numbers(A.field):
        warning = quoted_relation_warning(F)
        if warning:
            report.add_warning("quoted dual-number relations", warning)
    if A == B and A == conjugation_algebra(A.field):
        report.add_check(conjugation_check(F))
    return report


@command("comul", "Δ_B: F(A,C) → F(A,B)⊗F(B,C) and its checks", _A,
         Arg("--B", "middle algebra, or 'same' (= A)", "same"),
         Arg("--C", "target algebra, or 'same' (= A)", "same"),
         Arg("--second", "second middle algebra: also check (1⊗Δ_second)∘Δ_B = (Δ_B⊗1)∘Δ_second"), _FIELD)
def comul(job: JobSpec) -> Report:
    report = new_report(job)
    A = algebra(job, "A")
    B = algebra(job, "B", same=A)
    C = algebra(job, "C", same=A)
    FAC = presentation(job, A, C, verify=False)
    FAB = FAC if B == C else presentation(job, A, B, verify=False)
    FBC = FAC if A == B else presentation(job, B, C, verify=False)
    second = algebra(job, "second", same=B) if job.param("second") is not None else None
    result = comultiplication(FAC, B, FAB, FBC, second=second)
    report.add_check(result.report)
    report.artifacts["comultiplication"] = {k: v for k, v in result.to_dict().items() if k != "report"}
    return report


@command("counit", "ε on F(A,A) and the counit laws", _A, _FIELD)
def counit(job: JobSpec) -> Report:
    report = new_report(job)
    A = algebra(job, "A")
    F = presentation(job, A, A, verify=False)
    report.add_check(bialgebra_check(F))
    data = F.to_dict()
    report.artifacts["epsilon"] = data["epsilon"]
    report.artifacts["delta"] = data["delta"]
    return report


@command("hilbert", "dimension sequence of F(A,B) up to --dmax", _A, _B, _FIELD, _DMAX)
def hilbert(job: JobSpec) -> Report:
    report = new_report(job)
    A = algebra(job, "A")
    B = algebra(job, "B", same=A)
    F = presentation(job, A, B, verify=False)
    sequence = F.dimension_sequence(dmax(job))
    check = CheckReport("dimension sequence")
    check.note("complete_up_to", F.system.complete_up_to)
    check.note("rules", len(F.system.rules))
    report.add_check(check)
    report.artifacts["generators"] = list(F.labels)
    report.artifacts["dimension_sequence"] = sequence
    return report


@command("map-extension", "F(σ) for an extension σ: A → S⊗B or a representation of A", _A, _B, _FIELD,
         Arg("--extension", "ExtensionMap JSON: {A, S, B, sigma[i][s][k]}"),
         Arg("--representation", "JSON list of dim A matrices θ(a_i); default: the regular representation"))
def map_extension(job: JobSpec) -> Report:
    report = new_report(job)
    ext_json = json_param(job, "extension")
    if ext_json is not None:
        ext = converter.extension_from_json(ext_json)
        F = presentation(job, ext.A, ext.B, verify=False)
        image = F_of_extension(F, sigma=ext)
    else:
        A = algebra(job, "A")
        B = algebra(job, "B", same=A)
        F = presentation(job, A, B, verify=False)
        rep_json = json_param(job, "representation")
        if rep_json is None:
            mats = list(regular_representation(A).matrices)
        else:
            mats = [converter.matrix_from_json(m, A.field, f"θ(a{i})") for i, m in enumerate(rep_json)]
        image = F_of_extension(F, representation=mats)
    report.add_check(image.report)
    report.artifacts["F_of_sigma"] = {k: v for k, v in image.to_dict().items() if k != "report"}
    return report


@command("rep-measure", "measuring coalgebra from a representation of F(A,A)", _A, _FIELD,
         Arg("--b", "parameter b of f1 ↦ diag(b,−b), f0 ↦ [[0,1],[b²−1,0]]"),
         Arg("--images", "JSON {generator: matrix} for every generator of F(A,A)"),
         Arg("--lam", "central polynomials 'a; b; c' in L for f1 ↦ diag(a,−a), f0 ↦ [[0,b],[c,0]]"))
def rep_measure(job: JobSpec) -> Report:
    report = new_report(job)
    A = algebra(job, "A")
    F = presentation(job, A, A, verify=False)
    fld = field_of(job)
    if job.param("lam") is not None:
        parts = [p.strip() for p in str(job.param("lam")).split(";")]
        if len(parts) != 3:
            raise InputError("--lam needs three central polynomials 'a; b; c'", offset=0, text=job.param("lam"))
        a, b, c = (converter.parse_central(p, fld) for p in parts)
        mats = lambda_family(a, b, c)
        image = map_presentation(F, MatrixTarget(2, CentralPoly.const(1, fld)), mats,
                                 name="λ-family respects the relations")
        image.report.note("measuring coalgebra", "skipped for a parameterized target")
        report.add_check(image.report)
        report.artifacts["images"] = {k: show_matrix(m) for k, m in mats.items()}
        return report

    images_json = json_param(job, "images")
    if images_json is not None:
        if not isinstance(images_json, dict):
            raise InputError("--images must be a JSON object {generator: matrix}")
        mats = {k: converter.matrix_from_json(v, fld, k) for k, v in images_json.items()}
    else:
        mats = complex_family(converter.parse_scalar(job.param("b", "2"), fld), fld)
        if set(mats) != set(F.labels):
            raise InputError(f"--b needs generators f0, f1; F({A.name},{A.name}) has {', '.join(F.labels)}")
    measuring, check = representation_to_measuring(F, mats)
    report.add_check(check)
    report.artifacts["images"] = {k: show_matrix(m) for k, m in mats.items()}
    if measuring is not None:
        report.artifacts["measuring"] = converter.measuring_to_json(measuring)
    return report
