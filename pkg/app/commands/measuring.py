"""Measuring maps at finite dimension: duality, convolution algebras and the measuring law."""

from __future__ import annotations

from app.algebra.checks import CheckReport
from app.algebra.coalg import (
    ExtensionMap,
    MeasuringData,
    convolution_algebra,
    derivation_pair,
    dual_algebra,
    dual_coalgebra,
    dualize,
    jet_measuring,
    measuring_from_maps,
    validate_coalgebra,
    verify_measuring,
)
from app.algebra.errors import InputError
from app.algebra.finalg import dual_numbers, validate_algebra
from app.commands import Arg, command
from app.commands.common import algebra, field_of, json_param, new_report
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter


def _roundtrip(name: str, before: object, after: object) -> CheckReport:
    check = CheckReport(name)
    check.tick()
    if before != after:
        check.add("dualizing twice is the identity", ())
    return check


@command("dual", "dual coalgebra B*, dual algebra H*, or measuring ⟷ extension, with the round trip",
         Arg("--algebra", "algebra to dualize into a coalgebra"),
         Arg("--coalgebra", "coalgebra to dualize into an algebra"),
         Arg("--measuring", "measuring JSON {H, A, B, maps}, dualized to an extension"),
         Arg("--extension", "extension JSON {A, S, B, sigma}, dualized to a measuring"),
         Arg("--field", "base field for catalog entries"))
def dual(job: JobSpec) -> Report:
    report = new_report(job)
    given = [k for k in ("algebra", "coalgebra", "measuring", "extension") if job.param(k) is not None]
    if len(given) > 1:
        raise InputError(f"dual takes one input, got --{' and --'.join(given)}")
    kind = given[0] if given else "algebra"

    if kind == "algebra":
        A = algebra(job, "algebra", default="dual_numbers")
        H = dual_coalgebra(A)
        report.add_check(validate_coalgebra(H))
        back = dual_algebra(H)
        report.add_check(_roundtrip("B** = B", (A.c, A.unit), (back.c, back.unit)))
        report.artifacts["coalgebra"] = converter.coalgebra_to_json(H)
    elif kind == "coalgebra":
        H = converter.load_coalgebra(job.param("coalgebra"), field_of(job))
        report.add_check(validate_coalgebra(H))
        A = dual_algebra(H)
        report.add_check(validate_algebra(A))
        back = dual_coalgebra(A)
        report.add_check(_roundtrip("H** = H", (H.d, H.counit), (back.d, back.counit)))
        report.artifacts["algebra"] = converter.algebra_to_json(A)
    elif kind == "measuring":
        m = converter.measuring_from_json(json_param(job, "measuring"))
        report.add_check(verify_measuring(m))
        ext, check = dualize(m)
        report.add_check(check)
        back, _ = dualize(ext)
        assert isinstance(back, MeasuringData)
        report.add_check(_roundtrip("measuring round trip", m.rho, back.rho))
        report.artifacts["extension"] = converter.extension_to_json(ext)  # type: ignore[arg-type]
    else:
        e = converter.extension_from_json(json_param(job, "extension"))
        m, check = dualize(e)
        report.add_check(check)
        back, _ = dualize(m)
        assert isinstance(back, ExtensionMap)
        report.add_check(_roundtrip("extension round trip", e.sigma, back.sigma))
        report.artifacts["measuring"] = converter.measuring_to_json(m)  # type: ignore[arg-type]
    return report


@command("convolution", "convolution algebra [H, B] = Hom(H, B) and its algebra axioms",
         Arg("--H", "coalgebra: catalog spec or JSON", "derivation_pair"),
         Arg("--B", "algebra: catalog spec or JSON", "base_field"),
         Arg("--field", "base field for catalog entries"))
def convolution(job: JobSpec) -> Report:
    report = new_report(job)
    fld = field_of(job)
    H = converter.load_coalgebra(job.param("H", "derivation_pair"), fld)
    B = algebra(job, "B", default="base_field")
    C = convolution_algebra(H, B)
    report.add_check(validate_algebra(C))
    report.artifacts["algebra"] = converter.algebra_to_json(C)
    return report


def _euler_derivation() -> MeasuringData:
    """ρ(g) = id and ρ(γ) = (1 ↦ 0, d ↦ d) on the dual numbers."""
    D = dual_numbers()
    return measuring_from_maps(
        derivation_pair(), D, D,
        [[[1, 0], [0, 1]], [[0, 0], [0, 1]]],
    )


@command("verify-measuring", "check ⟨ρ(h),aa′⟩ = Σ⟨ρ(h₍₂₎),a⟩⟨ρ(h₍₁₎),a′⟩ and ⟨ρ(h),1⟩ = ε(h)1",
         Arg("--measuring", "measuring JSON {H, A, B, maps}; default: the Euler derivation on k[d]/d²"),
         Arg("--jet", "order n of the higher Euler operators on --A", type=int),
         Arg("--A", "algebra for --jet", "quotient_poly(x^3)"),
         Arg("--field", "base field for catalog entries"))
def verify_measuring_cmd(job: JobSpec) -> Report:
    report = new_report(job)
    if job.param("measuring") is not None:
        m = converter.measuring_from_json(json_param(job, "measuring"))
    elif job.param("jet") is not None:
        m = jet_measuring(algebra(job, "A", default="quotient_poly(x^3)"), int(job.param("jet")))
    else:
        m = _euler_derivation()
    report.add_check(verify_measuring(m))
    report.artifacts["measuring"] = converter.measuring_to_json(m)
    return report
