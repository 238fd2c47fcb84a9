"""Finite-dimensional coalgebras, duality, convolution and measuring maps.

Sweedler slot convention: Δh = Σ h₍₂₎⊗h₍₁₎, so the FIRST tensor slot is
h₍₂₎. With ``d[i][j][k]`` the coefficient of h_j⊗h_k in Δh_i, every
formula below pairs the left factor of a product with slot j. The only
place that expands iterated coproducts is ``iterated_coproduct``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Sequence

from app.algebra.checks import CheckReport
from app.algebra.errors import InputError, StructureError
from app.algebra.exactnum import QQ, FieldSpec, Matrix, Scalar
from app.algebra.finalg import FinAlgebra, Tensor3, Vector, tensor3

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinCoalgebra:
    field: FieldSpec
    labels: tuple[str, ...]
    d: Tensor3
    counit: Vector
    weights: tuple[int, ...] = ()
    name: str = field(default="raw", compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class MeasuringData:
    """ρ(h_i)(a_j) = Σ_k rho[i][j][k] b_k."""

    H: FinCoalgebra
    A: FinAlgebra
    B: FinAlgebra
    rho: Tensor3

    def apply(self, i: int, a: Sequence[Scalar]) -> Vector:
        out = [self.B.field.zero] * self.B.dim
        for j, x in enumerate(a):
            if x:
                for k, y in enumerate(self.rho[i][j]):
                    if y:
                        out[k] = out[k] + x * y
        return tuple(out)


@dataclass(frozen=True)
class ExtensionMap:
    """σ(a_i) = Σ_{s,k} sigma[i][s][k] s_s⊗b_k."""

    A: FinAlgebra
    S: FinAlgebra
    B: FinAlgebra
    sigma: tuple[tuple[tuple[Scalar, ...], ...], ...]


def _label_dual(label: str) -> str:
    return label[:-1] if label.endswith("*") else f"{label}*"


# ── catalog ──────────────────────────────────────────────────────────────


def grouplike(field_: FieldSpec = QQ) -> FinCoalgebra:
    return FinCoalgebra(field_, ("g",), (((field_.one,),),), (field_.one,), (0,), name="grouplike")


def derivation_pair(field_: FieldSpec = QQ) -> FinCoalgebra:
    """Basis g, γ with Δg = g⊗g, Δγ = γ⊗g + g⊗γ, ε(γ) = 0."""
    one, zero = field_.one, field_.zero
    d = (
        ((one, zero), (zero, zero)),
        ((zero, one), (one, zero)),
    )
    return FinCoalgebra(field_, ("g", "γ"), d, (one, zero), (0, 1), name="derivation_pair")


def matrix_coalgebra(n: int, field_: FieldSpec = QQ) -> FinCoalgebra:
    """Δξ_ab = Σ_k ξ_ak⊗ξ_kb, ε(ξ_ab) = δ_ab; basis row-major."""
    units = [(a, b) for a in range(n) for b in range(n)]
    pos = {u: i for i, u in enumerate(units)}
    size = n * n

    def entry(i: int, j: int) -> list[int]:
        (a, b), (a2, k) = units[i], units[j]
        row = [0] * size
        if a2 == a:
            row[pos[(k, b)]] = 1
        return row

    return FinCoalgebra(
        field_,
        tuple(f"e{a + 1}{b + 1}*" for a, b in units),
        tensor3(field_, size, entry),
        tuple(field_(1 if a == b else 0) for a, b in units),
        (1,) * size,
        name=f"matrix_coalgebra({n})",
    )


def jet(n: int, field_: FieldSpec = QQ) -> FinCoalgebra:
    """Divided-power jets d_0..d_n: Δd_k = Σ_{i+j=k} d_i⊗d_j."""
    if n < 0:
        raise InputError("jet order must be >= 0")
    return FinCoalgebra(
        field_,
        tuple(f"d{k}" for k in range(n + 1)),
        tensor3(field_, n + 1, lambda k, i: [1 if i + j == k else 0 for j in range(n + 1)]),
        tuple(field_(1 if k == 0 else 0) for k in range(n + 1)),
        tuple(range(n + 1)),
        name=f"jet({n})",
    )


def raw_coalgebra(
    d: Sequence[Sequence[Sequence[Any]]],
    counit: Sequence[Any],
    labels: Sequence[str] | None = None,
    field_: FieldSpec = QQ,
    name: str = "raw",
) -> FinCoalgebra:
    n = len(d)
    if any(len(row) != n or any(len(v) != n for v in row) for row in d) or len(counit) != n:
        raise StructureError(f"comultiplication must be {n}x{n}x{n} with a length-{n} counit")
    H = FinCoalgebra(
        field_,
        tuple(labels) if labels else tuple(f"h{i}" for i in range(n)),
        tensor3(field_, n, lambda i, j: d[i][j]),
        tuple(field_(e) for e in counit),
        (1,) * n,
        name=name,
    )
    report = validate_coalgebra(H)
    if not report.ok:
        first = report.first()
        raise StructureError(f"{first.check} fails", first.where)
    return H


COALGEBRA_CATALOG: dict[str, Callable[..., FinCoalgebra]] = {
    "grouplike": grouplike,
    "derivation_pair": derivation_pair,
    "matrix_coalgebra": matrix_coalgebra,
    "jet": jet,
    "raw": raw_coalgebra,
}


def build_coalgebra(name: str, **params: Any) -> FinCoalgebra:
    if name not in COALGEBRA_CATALOG:
        raise InputError(f"unknown coalgebra {name!r}; valid: {', '.join(sorted(COALGEBRA_CATALOG))}")
    return COALGEBRA_CATALOG[name](**params)


def validate_coalgebra(H: FinCoalgebra) -> CheckReport:
    report = CheckReport(f"coalgebra axioms: {H.name}")
    n = H.dim
    zero = H.field.zero
    d = H.d
    for i in range(n):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    # (Δ⊗1)Δ vs (1⊗Δ)Δ, coefficient of h_a⊗h_b⊗h_c
                    lhs = zero
                    rhs = zero
                    for m in range(n):
                        if d[i][m][c]:
                            lhs = lhs + d[i][m][c] * d[m][a][b]
                        if d[i][a][m]:
                            rhs = rhs + d[i][a][m] * d[m][b][c]
                    report.tick()
                    if lhs != rhs:
                        report.add("coassociativity", (i, a, b, c), f"{lhs} != {rhs}")
        for k in range(n):
            left = sum((d[i][j][k] * H.counit[j] for j in range(n)), zero)
            right = sum((d[i][k][j] * H.counit[j] for j in range(n)), zero)
            want = 1 if i == k else 0
            report.tick(2)
            if left != want:
                report.add("left counit", (i, k))
            if right != want:
                report.add("right counit", (i, k))
    return report


def iterated_coproduct(H: FinCoalgebra, i: int, factors: int) -> dict[tuple[int, ...], Scalar]:
    """Δ^{factors-1} h_i as {(j_1, …, j_factors): coeff}, slots in Sweedler order."""
    out: dict[tuple[int, ...], Scalar] = {(i,): H.field.one}
    for _ in range(factors - 1):
        nxt: dict[tuple[int, ...], Scalar] = {}
        for slots, c in out.items():
            head, rest = slots[0], slots[1:]
            for j, row in enumerate(H.d[head]):
                for k, v in enumerate(row):
                    if v:
                        key = (j, k) + rest
                        val = nxt.get(key, H.field.zero) + c * v
                        if val:
                            nxt[key] = val
                        else:
                            nxt.pop(key, None)
        out = nxt
    return out


# ── duality ──────────────────────────────────────────────────────────────


def dual_coalgebra(B: FinAlgebra) -> FinCoalgebra:
    """B* with Δa_k* = Σ c[i][j][k] a_i*⊗a_j*; ε(a_k*) = unit coordinate k."""
    n = B.dim
    return FinCoalgebra(
        B.field,
        tuple(_label_dual(lab) for lab in B.labels),
        tensor3(B.field, n, lambda k, i: [B.c[i][j][k] for j in range(n)]),
        B.unit,
        B.weights,
        name=f"dual_coalgebra({B.name})",
    )


def dual_algebra(H: FinCoalgebra) -> FinAlgebra:
    """H* with (αβ)(h) = Σ α(h₍₂₎)β(h₍₁₎); unit = ε. No rebasing."""
    n = H.dim
    weights = H.weights or tuple(1 for _ in range(n))
    return FinAlgebra(
        H.field,
        tuple(_label_dual(lab) for lab in H.labels),
        tensor3(H.field, n, lambda j, k: [H.d[i][j][k] for i in range(n)]),
        H.counit,
        weights,
        name=f"dual_algebra({H.name})",
    )


def convolution_algebra(H: FinCoalgebra, B: FinAlgebra) -> FinAlgebra:
    """[H, B] on the basis h_i*⊗b_k (index i·dim B + k)."""
    if H.field != B.field:
        raise InputError("convolution_algebra needs a shared field")
    nh, nb = H.dim, B.dim
    size = nh * nb

    def product(x: int, y: int) -> list[Scalar]:
        j, r = divmod(x, nb)
        k, s = divmod(y, nb)
        out = [B.field.zero] * size
        for i in range(nh):
            dij = H.d[i][j][k]
            if not dij:
                continue
            for t, cv in enumerate(B.c[r][s]):
                if cv:
                    out[i * nb + t] = out[i * nb + t] + dij * cv
        return out

    labels = tuple(f"{_label_dual(h)}⊗{b}" for h in H.labels for b in B.labels)
    unit = tuple(H.counit[i] * B.unit[t] for i in range(nh) for t in range(nb))
    return FinAlgebra(
        B.field,
        labels,
        tensor3(B.field, size, product),
        unit,
        tuple(0 if unit == tuple(B.field(1 if m == x else 0) for m in range(size)) else 1 for x in range(size)),
        name=f"[{H.name}, {B.name}]",
    )


# ── measuring maps and extensions ────────────────────────────────────────


def verify_measuring(m: MeasuringData) -> CheckReport:
    """⟨ρ(h),aa′⟩ = Σ⟨ρ(h₍₂₎),a⟩⟨ρ(h₍₁₎),a′⟩ and ⟨ρ(h),1⟩ = ε(h)1, on all basis triples."""
    H, A, B = m.H, m.A, m.B
    report = CheckReport("measuring law")
    for i in range(H.dim):
        for j in range(A.dim):
            for j2 in range(A.dim):
                lhs = m.apply(i, A.c[j][j2])
                rhs = B.zero_vector()
                for p, row in enumerate(H.d[i]):
                    for q, v in enumerate(row):
                        if v:
                            prod = B.mul(m.rho[p][j], m.rho[q][j2])
                            rhs = B.add(rhs, B.scale(v, prod))
                report.tick()
                if lhs != rhs:
                    report.add(
                        "measuring",
                        (H.labels[i], A.labels[j], A.labels[j2]),
                        f"ρ(h)(aa′) = {_fmt(lhs)} but Σ ρ(h₍₂₎)(a)ρ(h₍₁₎)(a′) = {_fmt(rhs)}",
                    )
        report.tick()
        if m.apply(i, A.unit) != B.scale(H.counit[i], B.unit):
            report.add("unit", (H.labels[i],), "⟨ρ(h),1⟩ != ε(h)1")
    return report


def verify_extension(e: ExtensionMap) -> CheckReport:
    """σ(a_i a_j) = σ(a_i)σ(a_j) in S⊗B and σ(1) = 1⊗1."""
    A, S, B = e.A, e.S, e.B
    report = CheckReport("extension is an algebra map")
    images = [_ext_image(e, a) for a in (A.basis(i) for i in range(A.dim))]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = _ext_image(e, A.c[i][j])
            rhs = _tensor_mul(S, B, images[i], images[j])
            report.tick()
            if lhs != rhs:
                report.add("multiplicative", (A.labels[i], A.labels[j]))
    unit = {(s, k): S.unit[s] * B.unit[k] for s in range(S.dim) for k in range(B.dim)}
    report.tick()
    if _ext_image(e, A.unit) != {key: v for key, v in unit.items() if v}:
        report.add("unital", (A.labels[0],), "σ(1) != 1⊗1")
    return report


def _ext_image(e: ExtensionMap, a: Sequence[Scalar]) -> dict[tuple[int, int], Scalar]:
    out: dict[tuple[int, int], Scalar] = {}
    for i, x in enumerate(a):
        if not x:
            continue
        for s, row in enumerate(e.sigma[i]):
            for k, v in enumerate(row):
                if v:
                    key = (s, k)
                    val = out.get(key, e.S.field.zero) + x * v
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
    return out


def _tensor_mul(
    S: FinAlgebra, B: FinAlgebra, x: dict[tuple[int, int], Scalar], y: dict[tuple[int, int], Scalar]
) -> dict[tuple[int, int], Scalar]:
    out: dict[tuple[int, int], Scalar] = {}
    for (s1, b1), u in x.items():
        for (s2, b2), v in y.items():
            uv = u * v
            for s, cs in enumerate(S.c[s1][s2]):
                if not cs:
                    continue
                for b, cb in enumerate(B.c[b1][b2]):
                    if cb:
                        key = (s, b)
                        val = out.get(key, S.field.zero) + uv * cs * cb
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
    return out


def dualize(obj: MeasuringData | ExtensionMap) -> tuple[ExtensionMap | MeasuringData, CheckReport]:
    """Measuring ρ: H → Hom(A,B) ⟷ extension σ: A → H*⊗B (and back via S*)."""
    if isinstance(obj, MeasuringData):
        S = dual_algebra(obj.H)
        sigma = tuple(
            tuple(tuple(obj.rho[i][j][k] for k in range(obj.B.dim)) for i in range(obj.H.dim))
            for j in range(obj.A.dim)
        )
        out: ExtensionMap | MeasuringData = ExtensionMap(obj.A, S, obj.B, sigma)
        report = verify_extension(out)
    else:
        H = dual_coalgebra(obj.S)
        rho = tuple(
            tuple(tuple(obj.sigma[j][i][k] for k in range(obj.B.dim)) for j in range(obj.A.dim))
            for i in range(obj.S.dim)
        )
        out = MeasuringData(H, obj.A, obj.B, rho)
        report = verify_measuring(out)
    report.name = f"dualize → {type(out).__name__}"
    return out, report


def measuring_from_maps(H: FinCoalgebra, A: FinAlgebra, B: FinAlgebra, maps: Sequence[Matrix]) -> MeasuringData:
    """ρ(h_i) given as dim B × dim A matrices (column j = image of a_j)."""
    if len(maps) != H.dim:
        raise InputError(f"need {H.dim} maps, got {len(maps)}")
    rho = tuple(
        tuple(tuple(B.field(maps[i][k][j]) for k in range(B.dim)) for j in range(A.dim))
        for i in range(H.dim)
    )
    return MeasuringData(H, A, B, rho)


# ── coalgebra maps and jets ──────────────────────────────────────────────


def verify_coalgebra_map(f: Matrix, H: FinCoalgebra, K: FinCoalgebra) -> CheckReport:
    """f(h_i) = Σ_k f[k][i] k_k must satisfy Δf = (f⊗f)Δ and εf = ε."""
    report = CheckReport("coalgebra map")
    zero = K.field.zero
    for i in range(H.dim):
        for a in range(K.dim):
            for b in range(K.dim):
                lhs = sum((f[k][i] * K.d[k][a][b] for k in range(K.dim)), zero)
                rhs = zero
                for j, row in enumerate(H.d[i]):
                    for l, v in enumerate(row):
                        if v:
                            rhs = rhs + v * f[a][j] * f[b][l]
                report.tick()
                if lhs != rhs:
                    report.add("Δ", (H.labels[i], K.labels[a], K.labels[b]))
        report.tick()
        if sum((f[k][i] * K.counit[k] for k in range(K.dim)), zero) != H.counit[i]:
            report.add("ε", (H.labels[i],))
    return report


def compose_measuring(m: MeasuringData, f: Matrix, H: FinCoalgebra) -> MeasuringData:
    """Pull a measuring on K back along a coalgebra map f: H → K."""
    B = m.B
    rho = tuple(
        tuple(
            tuple(sum((f[k][i] * m.rho[k][j][t] for k in range(m.H.dim)), B.field.zero) for t in range(B.dim))
            for j in range(m.A.dim)
        )
        for i in range(H.dim)
    )
    return MeasuringData(H, m.A, B, rho)


def jet_measuring(A: FinAlgebra, n: int) -> MeasuringData:
    """Higher Euler operators ρ(d_k)(a_i) = C(w_i, k)·a_i for the basis weights w."""
    H = jet(n, A.field)
    zero = A.field.zero
    rho = tuple(
        tuple(
            tuple(A.field(comb(A.weights[i], k)) if t == i else zero for t in range(A.dim))
            for i in range(A.dim)
        )
        for k in range(n + 1)
    )
    return MeasuringData(H, A, A, rho)


def _fmt(v: Sequence[Scalar]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"

