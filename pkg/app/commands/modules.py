"""D(M,N) = M ◁ N°: the module presentation, τ, D(ρ) and module maps."""

from __future__ import annotations

import logging

from app.algebra.checks import CheckReport
from app.algebra.coalg import ExtensionMap
from app.algebra.errors import InputError
from app.algebra.modcomod import (
    D_of_extension,
    D_of_module_map,
    FinModule,
    ModulePresentation,
    build_D,
    direct_sum,
    extension_module_map,
    module_extension_measuring,
    regular_module,
    tau_map,
)
from app.algebra.sweedler import SweedlerPresentation
from app.commands import Arg, command
from app.commands.common import algebra, dmax, json_param, new_report, presentation, show_matrix
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import converter

log = logging.getLogger(__name__)

CONJUGATION = {
    "A": {"catalog": "quotient_poly(x^2+1)"},
    "S": {"catalog": "base_field"},
    "sigma": [[["1", "0"]], [["0", "-1"]]],
}

_A = Arg("--A", "algebra acting on M: catalog spec or JSON", "quotient_poly(x^2+1)")
_B = Arg("--B", "algebra acting on N, or 'same'", "same")
_M = Arg("--M", "A-module: regular, trivial(k), natural(n) or JSON", "regular")
_N = Arg("--N", "B-module: regular, trivial(k), natural(n) or JSON", "regular")
_FIELD = Arg("--field", "base field: QQ or a modulus such as t^2+1")
_DMAX = Arg("--dmax", "highest degree for the dimension sequence (default: the bound)", type=int)


def _setup(job: JobSpec) -> tuple[SweedlerPresentation, FinModule, FinModule]:
    A = algebra(job, "A")
    B = algebra(job, "B", same=A)
    M = converter.load_module(job.param("M", "regular"), A)
    N = converter.load_module(job.param("N", "regular"), B)
    return presentation(job, A, B, verify=False), M, N


def _D(job: JobSpec, F: SweedlerPresentation, M: FinModule, N: FinModule) -> ModulePresentation:
    return build_D(M, N, F, job.bound, job.rule_cap)


def _free_rank(F: SweedlerPresentation, D: ModulePresentation, upto: int) -> CheckReport:
    check = CheckReport("D(A,A) is free of rank dim A over F(A,A)")
    dim = F.A.dim
    for d, (dv, fv) in enumerate(zip(D.dimension_sequence(upto), F.dimension_sequence(upto))):
        check.tick()
        if dv != dim * fv:
            check.add("dim_d D = dim A · dim_d F", (d,), f"{dv} != {dim}·{fv}")
    return check


def _additive(name: str, whole: list[int], parts: list[list[int]]) -> CheckReport:
    check = CheckReport(name)
    for d, value in enumerate(whole):
        check.tick()
        total = sum(p[d] for p in parts)
        if value != total:
            check.add("dimension sequences add", (d,), f"{value} != {total}")
    return check


@command("dmodule", "module presentation D(M,N) over F(A,B) with its corollary checks",
         _A, _B, _M, _N, _FIELD, _DMAX,
         Arg("--M2", "second A-module: also check D(M⊕M2,N) = D(M,N)⊕D(M2,N)"))
def dmodule(job: JobSpec) -> Report:
    report = new_report(job)
    F, M, N = _setup(job)
    D = _D(job, F, M, N)
    report.add_check(D.report)
    upto = min(dmax(job), D.system.bound)
    report.artifacts["D"] = D.to_dict(upto)

    A, B = F.A, F.B
    if A.dim == 1 and B.dim == 1:
        total = D.system.dimension_sequence(upto)
        check = CheckReport("base-field case: dim D = dim M · dim N")
        check.tick()
        if sum(total) != M.dim * N.dim:
            check.add("total dimension", (), f"{sum(total)} != {M.dim}·{N.dim}")
        report.add_check(check)
    if A == B and M == regular_module(A) and N == regular_module(B):
        report.add_check(_free_rank(F, D, min(upto, 4)))
    if job.param("M2") is not None:
        M2 = converter.load_module(job.param("M2"), A)
        D2 = _D(job, F, M2, N)
        Dsum = _D(job, F, direct_sum(M, M2), N)
        report.add_check(_additive(
            "D(M⊕M2,N) = D(M,N) ⊕ D(M2,N)",
            Dsum.dimension_sequence(upto),
            [D.dimension_sequence(upto), D2.dimension_sequence(upto)],
        ))
        report.artifacts["D_sum"] = Dsum.to_dict(upto)
    return report


@command("tau", "τ: M → D(M,N)⊗N and its module-map check over η",
         _A, _B, _M, _N, _FIELD,
         Arg("--M2", "target A-module for a module map --phi"),
         Arg("--phi", "JSON matrix of an A-module map M → M2 (columns are images)"))
def tau(job: JobSpec) -> Report:
    report = new_report(job)
    F, M, N = _setup(job)
    D = _D(job, F, M, N)
    t = tau_map(D)
    report.add_check(t.report)
    report.artifacts["tau"] = t.to_dict()
    if job.param("phi") is not None:
        M2 = converter.load_module(job.param("M2", "regular"), F.A)
        phi = converter.matrix_from_json(json_param(job, "phi"), F.A.field, "phi")
        report.add_check(D_of_module_map(D, _D(job, F, M2, N), phi))
    return report


def _extension(job: JobSpec) -> ExtensionMap:
    obj = json_param(job, "extension")
    return converter.extension_from_json(CONJUGATION if obj is None else obj)


@command("d-extension", "D(ρ) for the module extension ρ(a) = σ(a)·(v0⊗1) and its dual measuring comodule",
         Arg("--extension", "ExtensionMap JSON {A, S, B, sigma}; default: conjugation of Q[x]/(x²+1)"),
         Arg("--V", "S-module: regular, trivial(k) or JSON", "trivial(1)"),
         Arg("--v0", "vector of V, ';'-separated", "1"))
def d_extension(job: JobSpec) -> Report:
    report = new_report(job)
    ext = _extension(job)
    V = converter.load_module(job.param("V", "trivial(1)"), ext.S)
    v0 = converter.parse_scalar_list(job.param("v0", "1"), ext.S.field)
    if len(v0) != V.dim:
        raise InputError(f"--v0 needs {V.dim} coordinates, got {len(v0)}", offset=0, text=job.param("v0"))
    mx = extension_module_map(ext, V, v0)

    F = presentation(job, ext.A, ext.B, verify=False)
    D = build_D(regular_module(ext.A), regular_module(ext.B), F, job.bound, job.rule_cap)
    image = D_of_extension(D, mx)
    report.add_check(image.report)
    report.artifacts["D_of_rho"] = image.to_dict(D.labels)["images"]

    gamma, measuring, X, check = module_extension_measuring(mx)
    check.name = "dual measuring comodule"
    report.add_check(check)
    report.artifacts["gamma"] = {f"w{u}*": show_matrix(g) for u, g in enumerate(gamma)}
    report.artifacts["measuring"] = converter.measuring_to_json(measuring)
    log.debug("d-extension: V has dimension %d, comodule X has dimension %d", V.dim, X.dim)
    return report
