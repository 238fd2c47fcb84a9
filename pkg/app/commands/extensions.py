"""Root-function extensions, the Galois check, the monoid law and loop representations."""

from __future__ import annotations

from app.algebra.extensions import (
    galois_check,
    loop_data,
    loop_extension,
    monoid_check,
    root_function_images,
    vandermonde_data,
    vandermonde_extension,
)
from app.algebra.finalg import quotient_poly
from app.commands import Arg, command
from app.commands.common import new_report, presentation, show_matrix
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter

_P = Arg("--p", "monic rational polynomial in x", "x^2+1")
_FIELD = Arg("--field", "number field holding the roots, as a modulus in t", "t^2+1")
_ROOTS = Arg("--roots", "the roots μ1; μ2; … as field elements", "t; -t")


def _vandermonde(job: JobSpec):
    field_ = converter.load_field(job.param("field", "t^2+1"))
    roots = converter.parse_scalar_list(job.param("roots", "t; -t"), field_)
    return vandermonde_data(converter.parse_poly(job.param("p", "x^2+1")), field_, roots)


@command("galois", "root-function map W_σ, F(W_σ) and whether σ comes from a Galois automorphism",
         _P, _FIELD, _ROOTS, Arg("--sigma", "function on root indices, 1-based, e.g. 2,1", "2,1"))
def galois(job: JobSpec) -> Report:
    report = new_report(job)
    vd = _vandermonde(job)
    sigma = [s - 1 for s in converter.parse_int_list(job.param("sigma", "2,1"), "--sigma")]
    rf = vandermonde_extension(vd, sigma)
    A = quotient_poly(vd.p)
    images = root_function_images(presentation(job, A, A, verify=False), rf)
    report.add_check(images.report)
    check = galois_check(vd, sigma)
    report.add_check(check)
    report.artifacts["root_function"] = rf.to_dict()
    report.artifacts["F_of_W"] = images.to_dict()["images"]
    report.artifacts["verdict"] = check.notes.get("galois")
    return report


@command("monoid", "W_σ W_τ against the composition of root functions, over all n^n functions",
         _P, _FIELD, _ROOTS)
def monoid(job: JobSpec) -> Report:
    report = new_report(job)
    check = monoid_check(_vandermonde(job))
    report.add_check(check)
    report.artifacts["law"] = check.notes.get("composition law")
    report.artifacts["pairs"] = check.notes.get("pairs")
    return report


@command("loop", "σ_Z(x) = Σ λ^k/k! ad(Z)^k(C) ⊗ x^k for nilpotent Z, and F(σ_Z)",
         _P, Arg("--Z", "nilpotent n×n matrix as JSON", "[[0, 1], [0, 0]]"),
         Arg("--at", "also specialize λ to this rational value"))
def loop(job: JobSpec) -> Report:
    report = new_report(job)
    p = converter.parse_poly(job.param("p", "x^2+1"))
    Z = converter.matrix_from_json(converter.load_json(job.param("Z", "[[0, 1], [0, 0]]")), what="Z")
    ld = loop_data(p, Z)
    A = quotient_poly(p)
    le = loop_extension(ld, presentation(job, A, A, verify=False))
    report.add_check(le.report)
    report.artifacts["loop"] = {k: v for k, v in le.to_dict().items() if k != "report"}
    if job.param("at") is not None:
        at = converter.parse_scalar(job.param("at"))
        report.artifacts["specialized"] = {
            A.labels[r]: show_matrix(M) for r, M in enumerate(le.specialize(at))
        }
    return report
