"""Concrete extensions of Q[x]/p: root-function (Vandermonde) maps and loop representations.

Root functions: over a number field k holding all roots μ_1..μ_n of p, any
function σ on root indices gives the k-algebra map W_σ of k[x]/p that
sends a to the element with values a(μ_σ(j)). In the power basis
W_σ = E⁻¹ S_σ E with E[j][i] = μ_j^i and S_σ[j][l] = δ_{l,σ(j)}.

Loop representations: for nilpotent Z the series
σ_Z(x) = Σ_k λ^k/k! ad(Z)^k(C) ⊗ x^k terminates, C the companion matrix.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import factorial
from typing import Any, Sequence

from app.algebra.checks import CheckReport
from app.algebra.coalg import ExtensionMap
from app.algebra.errors import InputError, SingularMatrixError, StructureError
from app.algebra.exactnum import (
    QQ,
    CentralPoly,
    Coeffs,
    FieldSpec,
    Matrix,
    Scalar,
    identity,
    is_zero_matrix,
    mat_add,
    mat_eq,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    mat_vec,
    poly_from,
    poly_str,
    zero_matrix,
)
from app.algebra.finalg import FinAlgebra, quotient_poly, regular_representation
from app.algebra.sweedler import (
    AlgebraMapImage,
    MatrixTarget,
    SweedlerPresentation,
    F_of_extension,
    map_presentation,
)

log = logging.getLogger(__name__)


def _eval_poly(coeffs: Coeffs, x: Scalar) -> Scalar:
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ── root functions ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class VandermondeData:
    p: Coeffs
    field: FieldSpec
    roots: tuple[Scalar, ...]

    @property
    def n(self) -> int:
        return len(self.p) - 1

    def evaluation_matrix(self) -> Matrix:
        """E[j][i] = μ_j^i: power coordinates → values at the roots."""
        return [[mu ** i for i in range(self.n)] for mu in self.roots]

    def validate(self) -> None:
        if len(self.roots) != self.n:
            raise InputError(f"{poly_str(self.p)} has degree {self.n} but {len(self.roots)} roots were given")
        for j, mu in enumerate(self.roots, start=1):
            if _eval_poly(self.p, mu):
                raise InputError(f"μ{j} = {mu} is not a root of {poly_str(self.p)}")
        if len(set(self.roots)) != len(self.roots):
            raise InputError("roots must be pairwise distinct")
        try:
            mat_inv(self.evaluation_matrix())
        except SingularMatrixError as exc:
            raise InputError(f"Vandermonde matrix is singular: {exc}") from exc


def vandermonde_data(p: Sequence[Any], field_: FieldSpec, roots: Sequence[Any]) -> VandermondeData:
    vd = VandermondeData(poly_from(p), field_, tuple(field_(r) if not isinstance(r, Scalar) else r for r in roots))
    vd.validate()
    return vd


def _check_sigma(vd: VandermondeData, sigma: Sequence[int]) -> None:
    if len(sigma) != vd.n or any(not 0 <= s < vd.n for s in sigma):
        raise InputError(f"σ must list {vd.n} root indices in 1..{vd.n}")


def selection_matrix(sigma: Sequence[int], n: int, field_: FieldSpec) -> Matrix:
    return [[field_(1 if l == sigma[j] else 0) for l in range(n)] for j in range(n)]


def root_function_matrix(vd: VandermondeData, sigma: Sequence[int]) -> Matrix:
    """W_σ in the power basis; column i holds the coordinates of W_σ(x^i)."""
    _check_sigma(vd, sigma)
    E = vd.evaluation_matrix()
    return mat_mul(mat_inv(E), mat_mul(selection_matrix(sigma, vd.n, vd.field), E))


@dataclass
class RootFunctionExtension:
    vd: VandermondeData
    sigma: tuple[int, ...]
    W: Matrix
    extension: ExtensionMap

    @property
    def w(self) -> list[Scalar]:
        return [row[1] if self.vd.n > 1 else row[0] for row in self.W]

    def to_dict(self) -> dict[str, Any]:
        return {
            "sigma": [s + 1 for s in self.sigma],
            "W": [[str(v) for v in row] for row in self.W],
            "w": [str(v) for v in self.w],
        }


def vandermonde_extension(vd: VandermondeData, sigma: Sequence[int]) -> RootFunctionExtension:
    """x ↦ Σ w_i ⊗ x^i with S = k seen as a Q-algebra on the basis 1, t, …"""
    sigma = tuple(sigma)
    W = root_function_matrix(vd, sigma)
    A = quotient_poly(vd.p)
    if vd.field.kind == QQ.kind:
        S = quotient_poly([0, 1], var="t", name="QQ")
    else:
        S = quotient_poly(vd.field.modulus, var=vd.field.var, name=str(vd.field))
    # sigma[i][s][r]: t^s-coordinate of the x^r-coefficient of W_σ(x^i)
    table = tuple(
        tuple(tuple(W[r][i].coords()[s] for r in range(vd.n)) for s in range(S.dim))
        for i in range(vd.n)
    )
    ext = ExtensionMap(A, S, A, tuple(tuple(tuple(QQ(v) for v in row) for row in block) for block in table))
    return RootFunctionExtension(vd, sigma, W, ext)


def root_function_images(F: SweedlerPresentation, rf: RootFunctionExtension) -> AlgebraMapImage:
    """F(W_σ) with the relation and square checks."""
    return F_of_extension(F, sigma=rf.extension)


def monoid_check(vd: VandermondeData, functions: Sequence[Sequence[int]] | None = None) -> CheckReport:
    """Find whether W_σ W_τ is W_{σ∘τ} or W_{τ∘σ} and assert it for every pair."""
    n = vd.n
    funcs = [tuple(f) for f in functions] if functions else list(itertools.product(range(n), repeat=n))
    mats = {f: root_function_matrix(vd, f) for f in funcs}
    report = CheckReport("root functions form a monoid")

    def comp(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(outer[inner[j]] for j in range(n))

    laws = {
        "W_σ W_τ = W_(τ∘σ)": lambda s, t: comp(t, s),
        "W_σ W_τ = W_(σ∘τ)": lambda s, t: comp(s, t),
    }
    holding = []
    for name, law in laws.items():
        ok = True
        for s in funcs:
            for t in funcs:
                target = law(s, t)
                want = mats.get(target) or root_function_matrix(vd, target)
                if not mat_eq(mat_mul(mats[s], mats[t]), want):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            holding.append(name)
    law_name = holding[0] if holding else "W_σ W_τ = W_(τ∘σ)"
    report.note("composition law", holding or ["none"])
    law = laws[law_name]
    for s in funcs:
        for t in funcs:
            report.tick()
            target = law(s, t)
            if not mat_eq(mat_mul(mats[s], mats[t]), mats.get(target) or root_function_matrix(vd, target)):
                report.add(law_name, (_one_based(s), _one_based(t)))
    report.note("pairs", len(funcs) ** 2)
    return report


def _one_based(f: Sequence[int]) -> str:
    return ",".join(str(x + 1) for x in f)


def galois_check(vd: VandermondeData, sigma: Sequence[int]) -> CheckReport:
    """Does σ come from a field automorphism σ̄ with σ̄(μ_j) = μ_σ(j) for every root?"""
    sigma = tuple(sigma)
    rf = vandermonde_extension(vd, sigma)
    report = CheckReport(f"Galois check σ = {_one_based(sigma)}")
    fld = vd.field
    mu1 = vd.roots[0]
    report.note("w", [str(v) for v in rf.w])
    for j, mu in enumerate(vd.roots):
        value = _eval_poly(tuple(rf.w), mu) if rf.w else fld.zero
        report.note(f"Σ w_i μ{j + 1}^i", str(value))

    if fld.degree == 1:
        def bar(s: Scalar) -> Scalar:
            return s
    else:
        m = fld.degree
        cols = [(mu1 ** k).coords() for k in range(m)]
        P = [[QQ(cols[k][s]) for k in range(m)] for s in range(m)]
        try:
            q = mat_vec(mat_inv(P), [QQ(1 if s == 1 else 0) for s in range(m)])
        except SingularMatrixError:
            report.warn(f"μ1 = {mu1} does not generate {fld}; σ̄ is undetermined")
            report.note("galois", "undetermined")
            return report
        image_t = sum((QQ(c) * vd.roots[sigma[0]] ** k for k, c in enumerate(q)), fld.zero)
        report.note("σ̄(t)", str(image_t))
        report.tick()
        if _eval_poly(fld.modulus, image_t):
            report.add("σ̄ is a field map", (fld.var,), f"m({image_t}) != 0")

        def bar(s: Scalar) -> Scalar:
            return sum((c * image_t ** k for k, c in enumerate(s.coeffs)), fld.zero)

    for j, mu in enumerate(vd.roots):
        report.tick()
        got = bar(mu)
        want = vd.roots[sigma[j]]
        if got != want:
            report.add("σ̄(μ_j) = μ_σ(j)", (f"μ{j + 1}",), f"{got} != {want}")
    report.note("galois", "corresponds to a Galois transformation" if report.ok else "not a Galois transformation")
    return report


# ── loop representations ─────────────────────────────────────────────────


@dataclass(frozen=True)
class LoopData:
    p: Coeffs
    Z: tuple[tuple[Scalar, ...], ...]

    @property
    def n(self) -> int:
        return len(self.p) - 1

    def nilpotency_index(self) -> int:
        Zm = [list(row) for row in self.Z]
        power = identity(len(Zm), QQ.one)
        for k in range(1, len(Zm) + 1):
            power = mat_mul(power, Zm)
            if is_zero_matrix(power):
                return k
        raise StructureError("Z is not nilpotent; the ad-series would not terminate", (len(Zm),))


def loop_data(p: Sequence[Any], Z: Sequence[Sequence[Any]]) -> LoopData:
    coeffs = poly_from(p)
    n = len(coeffs) - 1
    if len(Z) != n or any(len(row) != n for row in Z):
        raise InputError(f"Z must be {n}x{n} for a degree-{n} polynomial")
    ld = LoopData(coeffs, tuple(tuple(QQ(v) for v in row) for row in Z))
    ld.nilpotency_index()
    return ld


def companion_matrix(A: FinAlgebra) -> Matrix:
    return regular_representation(A).matrices[1] if A.dim > 1 else [[A.c[0][0][0]]]


@dataclass
class LoopExtension:
    ld: LoopData
    A: FinAlgebra
    coefficients: list[Matrix]  # σ_Z(x) = Σ_r coefficients[r] ⊗ x^r
    series: list[Matrix]  # ad(Z)^k(C)
    report: CheckReport
    images: AlgebraMapImage | None = None

    def specialize(self, at: Any) -> list[Matrix]:
        return [[[v.evaluate(at) for v in row] for row in M] for M in self.coefficients]

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": poly_str(self.ld.p),
            "sigma_Z(x)": {self.A.labels[r]: [[str(v) for v in row] for row in M]
                           for r, M in enumerate(self.coefficients)},
            "series_length": len(self.series),
            "report": self.report.to_dict(),
            "F_images": self.images.to_dict() if self.images else None,
        }


def _tensor_mul(A: FinAlgebra, x: list[Matrix], y: list[Matrix], zero: Matrix) -> list[Matrix]:
    out = [zero for _ in range(A.dim)]
    for r, M in enumerate(x):
        if is_zero_matrix(M):
            continue
        for s, N in enumerate(y):
            if is_zero_matrix(N):
                continue
            MN = mat_mul(M, N)
            for t, c in enumerate(A.c[r][s]):
                if c:
                    out[t] = mat_add(out[t], mat_scale(c, MN))
    return out


def loop_extension(ld: LoopData, F: SweedlerPresentation | None = None) -> LoopExtension:
    """σ_Z: Q[x]/p → M_n(Q[λ]) ⊗ Q[x]/p, checked against p and the F-relations."""
    ld.nilpotency_index()
    A = quotient_poly(ld.p)
    n = ld.n
    one = CentralPoly.const(1)
    lam = CentralPoly.lam()
    C = companion_matrix(A)
    Z = [list(row) for row in ld.Z]

    series: list[Matrix] = [C]
    while len(series) < 2 * n + 1:
        prev = series[-1]
        nxt = mat_sub(mat_mul(Z, prev), mat_mul(prev, Z))
        if is_zero_matrix(nxt):
            break
        series.append(nxt)

    zero = zero_matrix(n, n, one - one)
    coefficients = [zero for _ in range(A.dim)]
    for k, term in enumerate(series):
        x_k = A.power(A.basis(1) if A.dim > 1 else A.unit, k)
        scalar = lam ** k / factorial(k)
        lifted = [[scalar * v for v in row] for row in term]
        for r, c in enumerate(x_k):
            if c:
                coefficients[r] = mat_add(coefficients[r], mat_scale(c, lifted))

    report = CheckReport("p(σ_Z(x)) = 0")
    unit = [identity(n, one) if r == 0 else zero for r in range(A.dim)]
    value = [zero for _ in range(A.dim)]
    power = unit
    for c in ld.p:
        if c:
            value = [mat_add(v, mat_scale(c, P)) for v, P in zip(value, power)]
        power = _tensor_mul(A, power, coefficients, zero)
    for r, M in enumerate(value):
        report.tick()
        if not is_zero_matrix(M):
            report.add("p(σ_Z(x))", (A.labels[r],), str([[str(v) for v in row] for row in M]))

    result = LoopExtension(ld, A, coefficients, series, report)
    if F is not None:
        result.images = loop_images(F, result)
        report.merge(result.images.report)
    log.debug("loop extension: ad-series of length %d", len(series))
    return result


def loop_images(F: SweedlerPresentation, le: LoopExtension) -> AlgebraMapImage:
    """f_ir ↦ x^r-coefficient of σ_Z(x)^i, relations checked over Q[λ]."""
    if F.A != le.A or F.B != le.A:
        raise InputError("the presentation must be F(Q[x]/p, Q[x]/p) for the same p")
    n = le.ld.n
    one = CentralPoly.const(1)
    zero = zero_matrix(n, n, one - one)
    powers = [[identity(n, one) if r == 0 else zero for r in range(le.A.dim)]]
    for _ in range(1, le.A.dim):
        powers.append(_tensor_mul(le.A, powers[-1], le.coefficients, zero))
    images = [powers[i][r] for i, r in sorted(F.index, key=F.index.__getitem__)]
    return map_presentation(F, MatrixTarget(n, one), images, name="F(σ_Z) is well defined")
