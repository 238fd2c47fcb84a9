"""Finite-dimensional modules, comodules, measuring comodules and D(M,N) = M ◁ N°.

Action matrices hold images in columns: ρ(a_i)[q][p] is the m_q-coordinate
of a_i·m_p. A comodule coaction is ``co[u][h][v]``, the coefficient of
h_h ⊗ x_v in Δx_u (coalgebra leg first).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from app.algebra.checks import CheckReport
from app.algebra.coalg import ExtensionMap, FinCoalgebra, MeasuringData, dual_coalgebra, dualize
from app.algebra.errors import InputError, StructureError
from app.algebra.exactnum import Matrix, Scalar, identity, mat_add, mat_mul, mat_scale, mat_vec, zero_matrix
from app.algebra.finalg import FinAlgebra, matrix_units, regular_representation
from app.algebra.freealg import DEFAULT_RULE_CAP, NcPoly, nc_add_into
from app.algebra.freemodule import ModElem, ModuleSystem, complete_module
from app.algebra.sweedler import SweedlerPresentation

log = logging.getLogger(__name__)


# ── modules ──────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class FinModule:
    algebra: FinAlgebra
    dim: int
    action: tuple[Matrix, ...]
    name: str = dc_field(default="module", compare=False)

    def act(self, a: Sequence[Scalar]) -> Matrix:
        """Matrix of a general algebra element."""
        out = zero_matrix(self.dim, self.dim, self.algebra.field.zero)
        for i, c in enumerate(a):
            if c:
                out = mat_add(out, mat_scale(c, self.action[i]))
        return out

    def validate(self) -> CheckReport:
        A = self.algebra
        report = CheckReport(f"module axioms: {self.name}")
        for i in range(A.dim):
            for j in range(A.dim):
                report.tick()
                if mat_mul(self.action[i], self.action[j]) != self.act(A.c[i][j]):
                    report.add("ρ(a_i)ρ(a_j) = ρ(a_i a_j)", (A.labels[i], A.labels[j]))
        report.tick()
        if self.act(A.unit) != identity(self.dim, A.field.one):
            report.add("ρ(1) = id", ())
        return report


def module(A: FinAlgebra, action: Sequence[Matrix], name: str = "module") -> FinModule:
    if len(action) != A.dim:
        raise InputError(f"need {A.dim} action matrices, got {len(action)}")
    dim = len(action[0]) if action else 0
    mats = tuple([[A.field(x) for x in row] for row in m] for m in action)
    if any(len(m) != dim or any(len(row) != dim for row in m) for m in mats):
        raise InputError(f"action matrices must all be {dim}x{dim}")
    M = FinModule(A, dim, mats, name)
    report = M.validate()
    if not report.ok:
        first = report.first()
        raise StructureError(f"{first.check} fails", first.where)
    return M


def regular_module(A: FinAlgebra) -> FinModule:
    return FinModule(A, A.dim, regular_representation(A).matrices, f"{A.name} (regular)")


def trivial_module(A: FinAlgebra, dim: int, character: Sequence[Any] | None = None) -> FinModule:
    """a acts by the scalar character(a); the default picks the unit coordinate."""
    chi = [A.field(c) for c in character] if character is not None else list(A.unit)
    mats = tuple(mat_scale(chi[i], identity(dim, A.field.one)) for i in range(A.dim))
    return module(A, mats, name=f"k^{dim}")


def natural_module(n: int, S: FinAlgebra | None = None) -> FinModule:
    """k^n over matrix_units(n); e_ab acts as the matrix unit."""
    S = S or matrix_units(n)
    mats = []
    for idx in range(n * n):
        a, b = divmod(idx, n)
        mats.append([[S.field(1 if (r, c) == (a, b) else 0) for c in range(n)] for r in range(n)])
    return FinModule(S, n, tuple(mats), f"k^{n}")


def direct_sum(M1: FinModule, M2: FinModule) -> FinModule:
    if M1.algebra != M2.algebra:
        raise InputError("direct sum needs modules over the same algebra")
    zero = M1.algebra.field.zero
    n = M1.dim + M2.dim
    mats = []
    for X, Y in zip(M1.action, M2.action):
        block = [[zero] * n for _ in range(n)]
        for r in range(M1.dim):
            for c in range(M1.dim):
                block[r][c] = X[r][c]
        for r in range(M2.dim):
            for c in range(M2.dim):
                block[M1.dim + r][M1.dim + c] = Y[r][c]
        mats.append(block)
    return FinModule(M1.algebra, n, tuple(mats), f"{M1.name}⊕{M2.name}")


# ── comodules ────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class FinComodule:
    coalgebra: FinCoalgebra
    dim: int
    co: tuple[tuple[tuple[Scalar, ...], ...], ...]
    name: str = dc_field(default="comodule", compare=False)

    def validate(self) -> CheckReport:
        H = self.coalgebra
        report = CheckReport(f"comodule axioms: {self.name}")
        zero = H.field.zero
        co = self.co
        for u in range(self.dim):
            for h in range(H.dim):
                for h2 in range(H.dim):
                    for v2 in range(self.dim):
                        lhs = sum((co[u][h][v] * co[v][h2][v2] for v in range(self.dim)), zero)
                        rhs = sum((co[u][k][v2] * H.d[k][h][h2] for k in range(H.dim)), zero)
                        report.tick()
                        if lhs != rhs:
                            report.add("coassociative", (u, H.labels[h], H.labels[h2], v2))
            for v in range(self.dim):
                got = sum((H.counit[h] * co[u][h][v] for h in range(H.dim)), zero)
                report.tick()
                if got != (1 if u == v else 0):
                    report.add("counit", (u, v))
        return report

    def to_dict(self) -> dict[str, Any]:
        H = self.coalgebra
        return {
            "coalgebra": H.name,
            "dim": self.dim,
            "coaction": {
                f"x{u}": " + ".join(f"{c}*{H.labels[h]}⊗x{v}" for h in range(H.dim)
                                    for v in range(self.dim) if (c := self.co[u][h][v])) or "0"
                for u in range(self.dim)
            },
        }


def dual_comodule(N: FinModule) -> FinComodule:
    """N* over B*: Δν_u = Σ_{r,v} ρ(b_r)[u][v] b_r*⊗ν_v, so ⟨ν, b·n⟩ = Σ⟨ν₍₁₎,b⟩⟨ν₍₀₎,n⟩."""
    B = N.algebra
    co = tuple(
        tuple(tuple(N.action[r][u][v] for v in range(N.dim)) for r in range(B.dim)) for u in range(N.dim)
    )
    return FinComodule(dual_coalgebra(B), N.dim, co, f"{N.name}*")


def comodule_of(H: FinCoalgebra) -> FinComodule:
    """H as a comodule over itself."""
    return FinComodule(H, H.dim, H.d, H.name)


# ── measuring comodules ──────────────────────────────────────────────────


def verify_measuring_comodule(
    gamma: Sequence[Matrix],
    m: MeasuringData,
    X: FinComodule,
    M: FinModule,
    N: FinModule,
) -> CheckReport:
    """γ(x)(a·m) = Σ ρ(x₍₁₎)(a)·γ(x₍₀₎)(m) on every basis triple (x, a, m).

    gamma[u] is the dim N × dim M matrix of γ(x_u).
    """
    report = CheckReport("measuring comodule law")
    if X.coalgebra != m.H or M.algebra != m.A or N.algebra != m.B:
        raise InputError("comodule, modules and measuring map disagree on the algebras")
    A = m.A
    zero = A.field.zero
    for u in range(X.dim):
        for i in range(A.dim):
            lhs = mat_mul(gamma[u], M.action[i])
            rhs = zero_matrix(N.dim, M.dim, zero)
            for h in range(m.H.dim):
                for v in range(X.dim):
                    c = X.co[u][h][v]
                    if c:
                        term = mat_mul(N.act(m.rho[h][i]), gamma[v])
                        rhs = mat_add(rhs, mat_scale(c, term))
            for p in range(M.dim):
                report.tick()
                if any(lhs[q][p] != rhs[q][p] for q in range(N.dim)):
                    report.add("γ(x)(am)", (f"x{u}", A.labels[i], f"m{p}"))
    return report


@dataclass
class ModuleExtension:
    """ρ(m_p) = Σ_{x,u} table[p][x][u] w_x ⊗ n_u, over an algebra extension σ: A → S⊗B."""

    M: FinModule
    W: FinModule
    N: FinModule
    ext: ExtensionMap
    table: tuple[tuple[tuple[Scalar, ...], ...], ...]

    def image(self, v: Sequence[Scalar]) -> list[list[Scalar]]:
        zero = self.M.algebra.field.zero
        out = [[zero] * self.N.dim for _ in range(self.W.dim)]
        for p, c in enumerate(v):
            if c:
                for x in range(self.W.dim):
                    for u in range(self.N.dim):
                        out[x][u] = out[x][u] + c * self.table[p][x][u]
        return out

    def check(self) -> CheckReport:
        """ρ(a·m) = σ(a)·ρ(m) in W⊗N."""
        report = CheckReport("module extension")
        A, S = self.ext.A, self.ext.S
        zero = A.field.zero
        for i in range(A.dim):
            for p in range(self.M.dim):
                lhs = self.image([row[p] for row in self.M.action[i]])
                rhs = [[zero] * self.N.dim for _ in range(self.W.dim)]
                for s in range(S.dim):
                    Ws = self.W.action[s]
                    for r in range(self.ext.B.dim):
                        c = self.ext.sigma[i][s][r]
                        if not c:
                            continue
                        Nr = self.N.action[r]
                        for x in range(self.W.dim):
                            for u in range(self.N.dim):
                                val = self.table[p][x][u]
                                if not val:
                                    continue
                                for x2 in range(self.W.dim):
                                    for u2 in range(self.N.dim):
                                        if Ws[x2][x] and Nr[u2][u]:
                                            rhs[x2][u2] = rhs[x2][u2] + c * val * Ws[x2][x] * Nr[u2][u]
                report.tick()
                if lhs != rhs:
                    report.add("ρ(a·m) = σ(a)·ρ(m)", (A.labels[i], f"m{p}"))
        return report


def extension_module_map(ext: ExtensionMap, V: FinModule, v0: Sequence[Any]) -> ModuleExtension:
    """ρ(a_p) = σ(a_p)·(v0⊗1): a module extension from A regular to V ⊗ B regular."""
    A, S, B = ext.A, ext.S, ext.B
    if V.algebra != S:
        raise InputError("V must be a module over the extension's algebra S")
    vec = [S.field(x) for x in v0]
    M, N = regular_module(A), regular_module(B)
    zero = A.field.zero
    table = []
    for p in range(A.dim):
        block = [[zero] * B.dim for _ in range(V.dim)]
        for s in range(S.dim):
            sv = mat_vec(V.action[s], vec)
            for r in range(B.dim):
                c = ext.sigma[p][s][r]
                if c:
                    for x in range(V.dim):
                        block[x][r] = block[x][r] + c * sv[x]
        table.append(tuple(tuple(row) for row in block))
    return ModuleExtension(M, V, N, ext, tuple(table))


def module_extension_measuring(mx: ModuleExtension) -> tuple[list[Matrix], MeasuringData, FinComodule, CheckReport]:
    """Dualize θ: M → V⊗N over ψ to γ: V* → Hom(M,N) over ρ: S* → Hom(A,B)."""
    measuring, report = dualize(mx.ext)
    X = dual_comodule(mx.W)
    gamma = [
        [[mx.table[p][u][q] for p in range(mx.M.dim)] for q in range(mx.N.dim)]
        for u in range(mx.W.dim)
    ]
    report.merge(mx.check())
    report.merge(verify_measuring_comodule(gamma, measuring, X, mx.M, mx.N))  # type: ignore[arg-type]
    return gamma, measuring, X, report  # type: ignore[return-value]


# ── D(M,N) ───────────────────────────────────────────────────────────────


@dataclass
class ModulePresentation:
    F: SweedlerPresentation
    M: FinModule
    N: FinModule
    labels: tuple[str, ...]
    relations: list[ModElem]
    system: ModuleSystem
    report: CheckReport

    def gen(self, p: int, v: int) -> int:
        return p * self.N.dim + v

    def dimension_sequence(self, dmax: int) -> list[int]:
        return self.system.dimension_sequence(dmax)

    def to_dict(self, dmax: int | None = None) -> dict[str, Any]:
        dmax = self.system.bound if dmax is None else dmax
        return {
            "M": self.M.name,
            "N": self.N.name,
            "module_generators": list(self.labels),
            "relations": len(self.relations),
            "system": self.system.to_dict(),
            "dimension_sequence": self.dimension_sequence(dmax),
        }


def _term(word_poly: NcPoly, gen: int) -> ModElem:
    return {(w, gen): c for w, c in word_poly.items()}


def _d_relations(F: SweedlerPresentation, M: FinModule, N: FinModule) -> list[ModElem]:
    """[(a_i m_p)⊗ν_u] − Σ_{r,v} ρ_N(b_r)[u][v]·f_ir·[m_p⊗ν_v]."""
    A = F.A
    out: list[ModElem] = []
    seen: set[frozenset[Any]] = set()
    nd = N.dim
    for i in range(A.dim):
        for p in range(M.dim):
            for u in range(nd):
                rel: ModElem = {}
                for q in range(M.dim):
                    c = M.action[i][q][p]
                    if c:
                        nc_add_into(rel, {((), q * nd + u): c})
                for r in range(F.B.dim):
                    fir = F.f(i, r)
                    if not fir:
                        continue
                    for v in range(nd):
                        c = N.action[r][u][v]
                        if c:
                            nc_add_into(rel, _term(fir, p * nd + v), -c)
                if rel:
                    key = frozenset(rel.items())
                    if key not in seen:
                        seen.add(key)
                        out.append(rel)
    return out


def build_D(
    M: FinModule,
    N: FinModule,
    F: SweedlerPresentation,
    bound: int | None = None,
    rule_cap: int = DEFAULT_RULE_CAP,
) -> ModulePresentation:
    if M.algebra != F.A or N.algebra != F.B:
        raise InputError("M and N must be modules over the presentation's A and B")
    bound = F.system.complete_up_to if bound is None else bound
    labels = tuple(f"e{p}_{v}" for p in range(M.dim) for v in range(N.dim))
    relations = _d_relations(F, M, N)
    system = complete_module(relations, F.system, labels, bound, rule_cap)
    report = CheckReport("module presentation invariants")
    for rel in relations:
        report.tick()
        if system.normal_form(rel):
            report.add("relation", (system.format(rel),), "does not reduce to 0")
    log.info("D(%s, %s): %d generators, %d module rules", M.name, N.name, len(labels), len(system.rules))
    return ModulePresentation(F, M, N, labels, relations, system, report)


@dataclass
class TauMap:
    D: ModulePresentation
    table: list[dict[tuple[int, int], Scalar]]  # τ(m_p) = Σ c · e_gen ⊗ n_v, keyed (gen, v)
    report: CheckReport

    def to_dict(self) -> dict[str, Any]:
        labels = self.D.labels
        return {
            f"m{p}": " + ".join(f"{labels[g]}⊗n{v}" if c == 1 else f"{c}*{labels[g]}⊗n{v}"
                                for (g, v), c in sorted(row.items())) or "0"
            for p, row in enumerate(self.table)
        }


def tau_map(D: ModulePresentation) -> TauMap:
    """τ(m_p) = Σ_v [m_p⊗ν_v]⊗n_v, checked to satisfy τ(a·m) = η(a)·τ(m)."""
    F, M, N = D.F, D.M, D.N
    one = F.field.one
    table = [{(D.gen(p, v), v): one for v in range(N.dim)} for p in range(M.dim)]
    report = CheckReport("τ is a module map over η")
    for i in range(F.A.dim):
        for p in range(M.dim):
            for w in range(N.dim):
                lhs: ModElem = {}
                for q in range(M.dim):
                    c = M.action[i][q][p]
                    if c:
                        nc_add_into(lhs, {((), D.gen(q, w)): c})
                rhs: ModElem = {}
                for r in range(F.B.dim):
                    fir = F.f(i, r)
                    for v in range(N.dim):
                        c = N.action[r][w][v]
                        if c and fir:
                            nc_add_into(rhs, _term(fir, D.gen(p, v)), c)
                diff = dict(lhs)
                nc_add_into(diff, rhs, -1)
                report.tick()
                if D.system.normal_form(diff):
                    report.add("τ(a·m) = η(a)τ(m)", (F.A.labels[i], f"m{p}", f"n{w}"))
    return TauMap(D, table, report)


@dataclass
class ModuleMapImage:
    images: list[list[Scalar]]  # vector in W for each module generator
    report: CheckReport

    def to_dict(self, labels: Sequence[str]) -> dict[str, Any]:
        return {
            "images": {lab: [str(x) for x in v] for lab, v in zip(labels, self.images)},
            "report": self.report.to_dict(),
        }


def D_of_extension(D: ModulePresentation, rho: ModuleExtension) -> ModuleMapImage:
    """D(ρ): [m_p⊗ν_u] ↦ Σ_x ρ-table[p][x][u] w_x, relative to F(σ)."""
    F = D.F
    ext = rho.ext
    if ext.A != F.A or ext.B != F.B or rho.M != D.M or rho.N != D.N:
        raise InputError("module extension does not match D(M,N)")
    W, S = rho.W, ext.S
    zero = S.field.zero
    report = CheckReport("D(ρ) is well defined")
    report.merge(rho.check())
    images = [
        [rho.table[p][x][u] for x in range(W.dim)] for p in range(D.M.dim) for u in range(D.N.dim)
    ]
    gen_mats = [
        W.act(tuple(ext.sigma[i][s][r] for s in range(S.dim)))
        for i, r in sorted(F.index, key=F.index.__getitem__)
    ]
    eye = identity(W.dim, S.field.one)

    def word_matrix(w: tuple[int, ...]) -> Matrix:
        out = eye
        for g in w:
            out = mat_mul(out, gen_mats[g])
        return out

    for rel in D.relations:
        value = [zero] * W.dim
        for (w, g), c in rel.items():
            vec = mat_vec(word_matrix(w), images[g])
            value = [a + c * b for a, b in zip(value, vec)]
        report.tick()
        if any(value):
            report.add("relation vanishes in W", (D.system.format(rel),))
    tau = tau_map(D)
    for p in range(D.M.dim):
        pushed = [[zero] * D.N.dim for _ in range(W.dim)]
        for (g, v), c in tau.table[p].items():
            for x in range(W.dim):
                pushed[x][v] = pushed[x][v] + c * images[g][x]
        for u in range(D.N.dim):
            report.tick()
            if [pushed[x][u] for x in range(W.dim)] != [rho.table[p][x][u] for x in range(W.dim)]:
                report.add("(D(ρ)⊗1)∘τ = ρ", (f"m{p}", f"n{u}"))
    return ModuleMapImage(images, report)


def D_of_module_map(D: ModulePresentation, D2: ModulePresentation, phi: Matrix) -> CheckReport:
    """φ: M → M′ over A induces [m_p⊗ν] ↦ [φ(m_p)⊗ν]; check relations and τ-naturality."""
    if D.F is not D2.F and (D.F.A != D2.F.A or D.F.B != D2.F.B):
        raise InputError("both presentations need the same F(A,B)")
    M, M2, N = D.M, D2.M, D.N
    report = CheckReport("induced map D(M,N) → D(M′,N)")
    fld = M.algebra.field
    phi = [[fld(x) for x in row] for row in phi]
    for i in range(M.algebra.dim):
        report.tick()
        if mat_mul(phi, M.action[i]) != mat_mul(M2.action[i], phi):
            report.add("φ is A-linear", (M.algebra.labels[i],))

    def gen_image(g: int) -> ModElem:
        p, v = divmod(g, N.dim)
        return {((), D2.gen(q, v)): phi[q][p] for q in range(M2.dim) if phi[q][p]}

    for rel in D.relations:
        image: ModElem = {}
        for (w, g), c in rel.items():
            nc_add_into(image, {(w + t[0], t[1]): c * x for t, x in gen_image(g).items()})
        report.tick()
        if D2.system.normal_form(image):
            report.add("relation maps to 0", (D.system.format(rel),))
    tau, tau2 = tau_map(D), tau_map(D2)
    for p in range(M.dim):
        pushed: dict[tuple[int, int], Scalar] = {}
        for (g, v), c in tau.table[p].items():
            for ((_, g2), x) in gen_image(g).items():
                nc_add_into(pushed, {(g2, v): c * x})
        expected: dict[tuple[int, int], Scalar] = {}
        for q in range(M2.dim):
            if phi[q][p]:
                nc_add_into(expected, tau2.table[q], phi[q][p])
        report.tick()
        if pushed != expected:
            report.add("τ-naturality", (f"m{p}",))
    return report
