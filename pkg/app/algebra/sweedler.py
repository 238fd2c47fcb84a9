"""The universal measuring algebra F(A,B) as a finite presentation.

Generators are f_ir for i ≥ 1 (A-basis) and r over the B-basis; the unit
row is eliminated by f_0r := δ_0r. The universal extension is
η(a_i) = Σ_r f_ir ⊗ b_r, and the relations are every entry of
η(a_i)η(a_j) − η(a_i a_j) written through the regular representation of B.

Tensors over presentations are ``dict[tuple[Word, ...], Scalar]`` with one
word per leg. Legs are reduced independently with their own system.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable, Mapping, Protocol, Sequence

from app.algebra.checks import CheckReport
from app.algebra.coalg import ExtensionMap, MeasuringData, dual_coalgebra, dualize, iterated_coproduct
from app.algebra.errors import BoundExceededError, InputError, StructureError
from app.algebra.exactnum import (
    QQ,
    CentralPoly,
    FieldSpec,
    Matrix,
    Scalar,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    poly_from,
    poly_str,
    zero_matrix,
)
from app.algebra.finalg import FinAlgebra, dual_numbers, matrix_units, quotient_poly, require_unit_first
from app.algebra.freealg import (
    DEFAULT_BOUND,
    DEFAULT_RULE_CAP,
    NcPoly,
    RewritingSystem,
    Word,
    complete,
    format_terms,
    nc_add_into,
    nc_const,
    nc_gen,
    nc_mul,
)

log = logging.getLogger(__name__)

Tensor = dict[tuple[Word, ...], Scalar]
LegSystem = RewritingSystem | None


# ── tensor calculus ──────────────────────────────────────────────────────


def tensor_unit(legs: int, one: Scalar) -> Tensor:
    return {((),) * legs: one}


def poly_tensor(*polys: NcPoly) -> Tensor:
    """p₁⊗p₂⊗… expanded on pairs of words."""
    acc: list[tuple[tuple[Word, ...], Any]] = [((), None)]
    for p in polys:
        acc = [(key + (w,), c if coeff is None else coeff * c) for key, coeff in acc for w, c in p.items()]
    out: Tensor = {}
    for key, c in acc:
        nc_add_into(out, {key: c})
    return out


def tensor_mul(x: Tensor, y: Tensor) -> Tensor:
    out: Tensor = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            key = tuple(a + b for a, b in zip(kx, ky))
            v = cx * cy
            old = out.get(key)
            if old is not None:
                v = old + v
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def reduce_tensor(t: Tensor, systems: Sequence[LegSystem], strict: bool = False) -> Tensor:
    """Leg-wise normal form; a None system leaves its leg alone."""
    for leg, system in enumerate(systems):
        if system is None or not t:
            continue
        groups: dict[tuple[Word, ...], NcPoly] = {}
        for key, c in t.items():
            groups.setdefault(key[:leg] + key[leg + 1:], {})[key[leg]] = c
        out: Tensor = {}
        for rest, poly in groups.items():
            for w, c in system.normal_form(poly, strict=strict).items():
                out[rest[:leg] + (w,) + rest[leg:]] = c
        t = out
    return t


def apply_multiplicative(
    poly: NcPoly, images: Sequence[Tensor], systems: Sequence[LegSystem], one: Scalar
) -> Tensor:
    """Extend generator images to a multiplicative map on words, reducing as it goes."""
    legs = len(systems)
    out: Tensor = {}
    for w, c in poly.items():
        acc = tensor_unit(legs, one)
        for g in w:
            acc = reduce_tensor(tensor_mul(acc, images[g]), systems)
        nc_add_into(out, acc, c)
    return reduce_tensor(out, systems)


def format_tensor(t: Tensor, legs: Sequence[Callable[[Word], str]]) -> str:
    terms = sorted(t.items(), key=lambda kv: tuple((-len(w), w) for w in kv[0]))
    return format_terms(
        [("⊗".join(fmt(w) for fmt, w in zip(legs, key)), c) for key, c in terms]
    )


# ── presentation ─────────────────────────────────────────────────────────


@dataclass
class SweedlerPresentation:
    A: FinAlgebra
    B: FinAlgebra
    labels: tuple[str, ...]
    index: dict[tuple[int, int], int]
    relations: list[NcPoly]
    system: RewritingSystem
    bound: int
    delta: list[Tensor] | None = None
    epsilon: tuple[Scalar, ...] | None = None
    report: CheckReport = dc_field(default_factory=lambda: CheckReport("presentation invariants"))

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def f(self, i: int, r: int) -> NcPoly:
        if i == 0:
            return nc_const(1 if r == 0 else 0, self.field)
        return nc_gen(self.index[(i, r)], self.field)

    def gen_of(self, i: int, r: int) -> int:
        return self.index[(i, r)]

    def eta(self, i: int) -> list[NcPoly]:
        """Coordinates of η(a_i) along the B-basis."""
        return [self.f(i, r) for r in range(self.B.dim)]

    def normal_form(self, p: NcPoly, strict: bool = True) -> NcPoly:
        return self.system.normal_form(p, strict=strict)

    def dimension_sequence(self, dmax: int) -> list[int]:
        return self.system.dimension_sequence(dmax)

    def leg(self) -> Callable[[Word], str]:
        return self.system.word_str

    def to_dict(self) -> dict[str, Any]:
        sysm = self.system
        out: dict[str, Any] = {
            "A": self.A.name,
            "B": self.B.name,
            "generators": list(self.labels),
            "weights": list(sysm.order.weights),
            "relations": sorted({sysm.format(r) for r in self.relations}),
            "system": sysm.to_dict(),
            "eta": {
                self.A.labels[i]: format_terms(
                    [(f"{sysm.word_str(w)}⊗{self.B.labels[r]}", c)
                     for r, p in enumerate(self.eta(i)) for w, c in p.items()]
                )
                for i in range(self.A.dim)
            },
        }
        if self.delta is not None:
            out["delta"] = {
                self.labels[g]: format_tensor(t, [self.leg(), self.leg()]) for g, t in enumerate(self.delta)
            }
        if self.epsilon is not None:
            out["epsilon"] = {self.labels[g]: str(e) for g, e in enumerate(self.epsilon)}
        return out


def _generator_layout(A: FinAlgebra, B: FinAlgebra, prefix: str) -> tuple[list[str], list[int], dict[tuple[int, int], int]]:
    rows = sorted(range(1, A.dim), key=lambda i: (-A.weights[i], i))
    labels: list[str] = []
    weights: list[int] = []
    index: dict[tuple[int, int], int] = {}
    for i in rows:
        for r in range(B.dim):
            index[(i, r)] = len(labels)
            labels.append(f"{prefix}{r}" if A.dim == 2 else f"{prefix}{i}_{r}")
            weights.append(A.weights[i])
    return labels, weights, index


def _coordinate_relations(A: FinAlgebra, B: FinAlgebra, f: Callable[[int, int], NcPoly]) -> dict[tuple[int, int, int], NcPoly]:
    """B-coordinate t of η(a_i)η(a_j) − η(a_i a_j)."""
    out: dict[tuple[int, int, int], NcPoly] = {}
    for i in range(A.dim):
        for j in range(A.dim):
            for t in range(B.dim):
                rel: NcPoly = {}
                for r in range(B.dim):
                    fi = f(i, r)
                    if not fi:
                        continue
                    for s in range(B.dim):
                        cst = B.c[r][s][t]
                        if not cst:
                            continue
                        fj = f(j, s)
                        if fj:
                            nc_add_into(rel, nc_mul(fi, fj), cst)
                for k, ck in enumerate(A.c[i][j]):
                    if ck:
                        nc_add_into(rel, f(k, t), -ck)
                out[(i, j, t)] = rel
    return out


def _matrix_entries(B: FinAlgebra, coords: Mapping[tuple[int, int, int], NcPoly], A_dim: int) -> list[NcPoly]:
    """Entries of Σ_u coord_u·L(b_u), with L the left regular representation of B."""
    seen: set[frozenset[Any]] = set()
    out: list[NcPoly] = []
    for i in range(A_dim):
        for j in range(A_dim):
            for t in range(B.dim):
                for m in range(B.dim):
                    entry: NcPoly = {}
                    for u in range(B.dim):
                        cu = B.c[u][m][t]
                        if cu:
                            nc_add_into(entry, coords[(i, j, u)], cu)
                    if not entry:
                        continue
                    key = frozenset(entry.items())
                    if key not in seen:
                        seen.add(key)
                        out.append(entry)
    return out


def build_F(
    A: FinAlgebra,
    B: FinAlgebra,
    bound: int = DEFAULT_BOUND,
    rule_cap: int = DEFAULT_RULE_CAP,
    prefix: str = "f",
    schedule: random.Random | None = None,
    verify: bool = True,
) -> SweedlerPresentation:
    require_unit_first(A)
    require_unit_first(B)
    if A.field != B.field:
        raise InputError(f"F(A,B) needs a shared field, got {A.field} and {B.field}")
    fld = A.field
    labels, weights, index = _generator_layout(A, B, prefix)

    def f(i: int, r: int) -> NcPoly:
        if i == 0:
            return nc_const(1 if r == 0 else 0, fld)
        return nc_gen(index[(i, r)], fld)

    coords = _coordinate_relations(A, B, f)
    relations = _matrix_entries(B, coords, A.dim)
    log.info("F(%s, %s): %d generators, %d relations", A.name, B.name, len(labels), len(relations))
    system = complete(relations, labels, weights, bound, fld, rule_cap, schedule)
    F = SweedlerPresentation(A, B, tuple(labels), index, relations, system, bound)

    if A == B:
        F.delta = [
            _delta_image(F, i, s) for i, s in sorted(index, key=index.__getitem__)
        ]
        F.epsilon = tuple(fld(1 if i == s else 0) for i, s in sorted(index, key=index.__getitem__))

    if verify:
        report = F.report
        for rel in relations:
            report.tick()
            if system.normal_form(rel):
                report.add("relation", (system.format(rel),), "does not reduce to 0")
        for key, rel in coords.items():
            report.tick()
            if system.normal_form(rel):
                i, j, t = key
                report.add("η multiplicative", (A.labels[i], A.labels[j], B.labels[t]))
        if A == B:
            report.merge(bialgebra_check(F))
    return F


def _delta_image(F: SweedlerPresentation, i: int, s: int) -> Tensor:
    out: Tensor = {}
    for r in range(F.B.dim):
        nc_add_into(out, poly_tensor(F.f(i, r), F.f(r, s)))
    return out


# ── bialgebra structure ──────────────────────────────────────────────────


def _epsilon_poly(F: SweedlerPresentation, p: NcPoly) -> Scalar:
    eps = F.epsilon or ()
    acc = F.field.zero
    for w, c in p.items():
        term = c
        for g in w:
            term = term * eps[g]
            if not term:
                break
        acc = acc + term
    return acc


def _beyond_bound(F: SweedlerPresentation, word_weight_bound: int) -> bool:
    return word_weight_bound > F.system.complete_up_to


def _leg_weight_bound(F: SweedlerPresentation, images: Sequence[Tensor], p: NcPoly) -> int:
    weight = F.system.order.weight
    per_gen = [max((max(weight(w) for w in key) for key in t), default=0) for t in images]
    return max((sum(per_gen[g] for g in w) for w in p), default=0)


def bialgebra_check(F: SweedlerPresentation) -> CheckReport:
    """Δ and ε kill every rule; Δ is coassociative and counital on generators."""
    report = CheckReport(f"bialgebra F({F.A.name}, {F.A.name})")
    if F.delta is None or F.epsilon is None:
        report.warn("Δ and ε are only defined for F(A,A)")
        return report
    sysm = F.system
    one = F.field.one
    two = [sysm, sysm]
    three = [sysm, sysm, sysm]
    for rule in sysm.rules:
        rel = rule.as_poly(F.field)
        image = apply_multiplicative(rel, F.delta, two, one)
        report.tick()
        if image:
            where = (sysm.format(rel),)
            if _beyond_bound(F, _leg_weight_bound(F, F.delta, rel)):
                report.warn(f"Δ({where[0]}) reaches past the certified bound; not decided")
            else:
                report.add("Δ multiplicative", where, format_tensor(image, [sysm.word_str] * 2))
        report.tick()
        if _epsilon_poly(F, rel):
            report.add("ε kills relations", (sysm.format(rel),))

    for g, label in enumerate(F.labels):
        dg = F.delta[g]
        left: Tensor = {}
        right: Tensor = {}
        for (w1, w2), c in dg.items():
            for (u1, u2), c1 in apply_multiplicative({w1: one}, F.delta, two, one).items():
                nc_add_into(left, {(u1, u2, w2): c1 * c})
            for (u1, u2), c2 in apply_multiplicative({w2: one}, F.delta, two, one).items():
                nc_add_into(right, {(w1, u1, u2): c2 * c})
        report.tick()
        if reduce_tensor(left, three) != reduce_tensor(right, three):
            report.add("coassociative", (label,))
        eps_left: NcPoly = {}
        eps_right: NcPoly = {}
        for (w1, w2), c in dg.items():
            nc_add_into(eps_left, {w2: c * _epsilon_poly(F, {w1: one})})
            nc_add_into(eps_right, {w1: c * _epsilon_poly(F, {w2: one})})
        gen = sysm.normal_form(nc_gen(g, F.field), strict=False)
        report.tick(2)
        if sysm.normal_form(eps_left, strict=False) != gen:
            report.add("left counit", (label,))
        if sysm.normal_form(eps_right, strict=False) != gen:
            report.add("right counit", (label,))
    return report


@dataclass
class Comultiplication:
    FAC: SweedlerPresentation
    FAB: SweedlerPresentation
    FBC: SweedlerPresentation
    images: list[Tensor]
    report: CheckReport

    def to_dict(self) -> dict[str, Any]:
        legs = [self.FAB.leg(), self.FBC.leg()]
        return {
            "through": self.FAB.B.name,
            "images": {self.FAC.labels[g]: format_tensor(t, legs) for g, t in enumerate(self.images)},
            "report": self.report.to_dict(),
        }


def _factor_images(FXZ: SweedlerPresentation, FXY: SweedlerPresentation, FYZ: SweedlerPresentation) -> list[Tensor]:
    """Δ_Y on the generators of F(X,Z): f_iu ↦ Σ_r f_ir ⊗ f_ru."""
    images: list[Tensor] = []
    for (i, u) in sorted(FXZ.index, key=FXZ.index.__getitem__):
        t: Tensor = {}
        for r in range(FXY.B.dim):
            nc_add_into(t, poly_tensor(FXY.f(i, r), FYZ.f(r, u)))
        images.append(t)
    return images


def _expand_leg(t: Tensor, leg: int, images: Sequence[Tensor], systems: Sequence[LegSystem], one: Scalar) -> Tensor:
    """Apply a two-leg multiplicative map to one leg of ``t``."""
    out: Tensor = {}
    for key, c in t.items():
        for sub, c2 in apply_multiplicative({key[leg]: one}, images, systems, one).items():
            nc_add_into(out, {key[:leg] + sub + key[leg + 1:]: c * c2})
    return out


def coassociativity_check(
    FAD: SweedlerPresentation,
    B: FinAlgebra,
    C: FinAlgebra,
    FAB: SweedlerPresentation | None = None,
    FBD: SweedlerPresentation | None = None,
) -> CheckReport:
    """(1⊗Δ_C)∘Δ_B = (Δ_B⊗1)∘Δ_C on the generators of F(A,D), valued in F(A,B)⊗F(B,C)⊗F(C,D)."""
    A, D = FAD.A, FAD.B
    bound = FAD.bound
    FAB = FAB or build_F(A, B, bound, verify=False)
    FBD = FBD or build_F(B, D, bound, verify=False)
    FAC = build_F(A, C, bound, verify=False)
    FBC = build_F(B, C, bound, verify=False)
    FCD = build_F(C, D, bound, verify=False)
    one = FAD.field.one
    via_B = _factor_images(FAD, FAB, FBD)
    via_C = _factor_images(FAD, FAC, FCD)
    split_BD = _factor_images(FBD, FBC, FCD)
    split_AC = _factor_images(FAC, FAB, FBC)
    systems = [FAB.system, FBC.system, FCD.system]
    report = CheckReport(f"coassociativity through {B.name} and {C.name}")
    for g, label in enumerate(FAD.labels):
        left = _expand_leg(via_B[g], 1, split_BD, [FBC.system, FCD.system], one)
        right = _expand_leg(via_C[g], 0, split_AC, [FAB.system, FBC.system], one)
        report.tick()
        if reduce_tensor(left, systems) != reduce_tensor(right, systems):
            report.add("(1⊗Δ_C)Δ_B = (Δ_B⊗1)Δ_C", (label,))
    return report


def comultiplication(
    FAC: SweedlerPresentation,
    B: FinAlgebra,
    FAB: SweedlerPresentation | None = None,
    FBC: SweedlerPresentation | None = None,
    second: FinAlgebra | None = None,
) -> Comultiplication:
    """Δ_B: F(A,C) → F(A,B)⊗F(B,C), f_iu ↦ Σ_r f_ir ⊗ f_ru.

    With ``second`` the factorization is also checked to be coassociative
    through B and then ``second``.
    """
    A, C = FAC.A, FAC.B
    FAB = FAB or build_F(A, B, FAC.bound, verify=False)
    FBC = FBC or build_F(B, C, FAC.bound, verify=False)
    one = FAC.field.one
    images = _factor_images(FAC, FAB, FBC)
    systems = [FAB.system, FBC.system]
    report = CheckReport(f"Δ through {B.name}")
    for rel in FAC.relations:
        report.tick()
        if apply_multiplicative(rel, images, systems, one):
            report.add("Δ_B kills relation", (FAC.system.format(rel),))
    if FAC.delta is not None and A == B == C:
        for g, t in enumerate(images):
            report.tick()
            if reduce_tensor(t, systems) != reduce_tensor(FAC.delta[g], systems):
                report.add("matches stored Δ", (FAC.labels[g],))
        report.merge(bialgebra_check(FAC))
    if second is not None:
        report.merge(coassociativity_check(FAC, B, second, FAB, FBC))
    return Comultiplication(FAC, FAB, FBC, images, report)


# ── targets and F(σ) ─────────────────────────────────────────────────────


class AlgebraTarget(Protocol):
    name: str

    def one(self) -> Any: ...
    def zero(self) -> Any: ...
    def add(self, x: Any, y: Any) -> Any: ...
    def mul(self, x: Any, y: Any) -> Any: ...
    def scale(self, c: Any, x: Any) -> Any: ...
    def is_zero(self, x: Any) -> bool: ...
    def show(self, x: Any) -> Any: ...


class FinAlgebraTarget:
    def __init__(self, S: FinAlgebra) -> None:
        self.S = S
        self.name = S.name

    def one(self) -> Any:
        return self.S.unit

    def zero(self) -> Any:
        return self.S.zero_vector()

    def add(self, x: Any, y: Any) -> Any:
        return self.S.add(x, y)

    def mul(self, x: Any, y: Any) -> Any:
        return self.S.mul(x, y)

    def scale(self, c: Any, x: Any) -> Any:
        return self.S.scale(c, x)

    def is_zero(self, x: Any) -> bool:
        return not any(x)

    def show(self, x: Any) -> Any:
        return format_terms([(lab, v) for lab, v in zip(self.S.labels, x) if v])


class MatrixTarget:
    """n×n matrices over Scalar or CentralPoly entries."""

    def __init__(self, n: int, one: Any = None) -> None:
        self.n = n
        self._one = QQ.one if one is None else one
        self.name = f"M_{n}"

    def one(self) -> Any:
        return identity(self.n, self._one)

    def zero(self) -> Any:
        return zero_matrix(self.n, self.n, self._one - self._one)

    def add(self, x: Any, y: Any) -> Any:
        return mat_add(x, y)

    def mul(self, x: Any, y: Any) -> Any:
        return mat_mul(x, y)

    def scale(self, c: Any, x: Any) -> Any:
        return mat_scale(c, x)

    def is_zero(self, x: Any) -> bool:
        return all(not v for row in x for v in row)

    def show(self, x: Any) -> Any:
        return [[str(v) for v in row] for row in x]


class PresentationTarget:
    def __init__(self, system: RewritingSystem) -> None:
        self.system = system
        self.name = "presentation"

    def one(self) -> Any:
        return nc_const(1, self.system.field)

    def zero(self) -> Any:
        return {}

    def add(self, x: Any, y: Any) -> Any:
        out = dict(x)
        nc_add_into(out, y)
        return out

    def mul(self, x: Any, y: Any) -> Any:
        return nc_mul(x, y)

    def scale(self, c: Any, x: Any) -> Any:
        return {w: c * v for w, v in x.items() if c * v}

    def is_zero(self, x: Any) -> bool:
        return not self.system.normal_form(x)

    def show(self, x: Any) -> Any:
        return self.system.format(self.system.normal_form(x, strict=False))


def evaluate(p: NcPoly, images: Sequence[Any], target: AlgebraTarget) -> Any:
    acc = target.zero()
    for w, c in p.items():
        term = target.one()
        for g in w:
            term = target.mul(term, images[g])
        acc = target.add(acc, target.scale(c, term))
    return acc


@dataclass
class AlgebraMapImage:
    source: SweedlerPresentation
    target: AlgebraTarget
    images: list[Any]
    report: CheckReport

    def image_of(self, i: int, r: int) -> Any:
        return evaluate(self.source.f(i, r), self.images, self.target)

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": self.target.name,
            "images": {lab: self.target.show(x) for lab, x in zip(self.source.labels, self.images)},
            "report": self.report.to_dict(),
        }


def map_presentation(
    F: SweedlerPresentation | Any,
    target: AlgebraTarget,
    images: Sequence[Any] | Mapping[str, Any],
    relations: Sequence[NcPoly] | None = None,
    name: str = "relations vanish in the target",
) -> AlgebraMapImage:
    labels = F.labels
    if isinstance(images, Mapping):
        missing = [lab for lab in labels if lab not in images]
        if missing:
            raise InputError(f"no image given for generators {missing}")
        images = [images[lab] for lab in labels]
    images = list(images)
    if len(images) != len(labels):
        raise InputError(f"need {len(labels)} generator images, got {len(images)}")
    report = CheckReport(name)
    system: RewritingSystem = F.system
    for rel in F.relations if relations is None else relations:
        report.tick()
        try:
            value = evaluate(rel, images, target)
            if not target.is_zero(value):
                report.add("relation", (system.format(rel),), f"maps to {target.show(value)}")
        except BoundExceededError as exc:
            report.add("relation", (system.format(rel),), str(exc))
    return AlgebraMapImage(F, target, images, report)


def F_of_extension(
    F: SweedlerPresentation,
    sigma: ExtensionMap | None = None,
    representation: Sequence[Matrix] | None = None,
) -> AlgebraMapImage:
    """F(σ): f_ir ↦ s_ir with σ(a_i) = Σ_r s_ir⊗b_r, plus the square (F(σ)⊗1)∘η = σ."""
    A, B = F.A, F.B
    fld = F.field
    if (sigma is None) == (representation is None):
        raise InputError("give exactly one of an extension map or a representation")
    target: AlgebraTarget
    if sigma is not None:
        if sigma.A != A or sigma.B != B:
            raise InputError("extension does not match the presentation's algebras")
        S = sigma.S
        target = FinAlgebraTarget(S)

        def image(i: int, r: int) -> Any:
            return tuple(sigma.sigma[i][s][r] for s in range(S.dim))
    else:
        mats = [[[fld(x) for x in row] for row in m] for m in representation or ()]
        if len(mats) != A.dim:
            raise InputError(f"representation needs {A.dim} matrices, got {len(mats)}")
        n = len(mats[0])
        target = MatrixTarget(n, fld.one)
        zero = target.zero()

        def image(i: int, r: int) -> Any:
            return mats[i] if r == 0 else zero

    images = [image(i, r) for i, r in sorted(F.index, key=F.index.__getitem__)]
    mapped = map_presentation(F, target, images, name="F(σ) is well defined")
    report = mapped.report
    for i in range(A.dim):
        for r in range(B.dim):
            report.tick()
            got = evaluate(F.f(i, r), images, target)
            want = image(i, r)
            if not target.is_zero(_difference(target, got, want)):
                report.add("(F(σ)⊗1)∘η = σ", (A.labels[i], B.labels[r]),
                           f"{target.show(got)} != {target.show(want)}")
    return mapped


def _difference(target: AlgebraTarget, x: Any, y: Any) -> Any:
    return target.add(x, target.scale(-1, y))


# ── representations ──────────────────────────────────────────────────────


def complex_family(b: Any, field_: FieldSpec = QQ) -> dict[str, Matrix]:
    """f1 ↦ diag(b, −b), f0 ↦ [[0, 1], [b² − 1, 0]]: a representation of F(ℂ,ℂ)."""
    bv = field_(b)
    zero, one = field_.zero, field_.one
    return {
        "f0": [[zero, one], [bv * bv - 1, zero]],
        "f1": [[bv, zero], [zero, -bv]],
    }


def lambda_family(a: CentralPoly, b: CentralPoly, c: CentralPoly) -> dict[str, Matrix]:
    """f1 ↦ diag(a, −a), f0 ↦ [[0, b], [c, 0]]; a representation iff b·c − a² + 1 = 0."""
    zero = a - a
    return {"f0": [[zero, b], [c, zero]], "f1": [[a, zero], [zero, -a]]}


def representation_to_measuring(
    F: SweedlerPresentation, images: Sequence[Matrix] | Mapping[str, Matrix], n: int | None = None
) -> tuple[MeasuringData | None, CheckReport]:
    """θ∘η: A → End(V)⊗A dualized to a measuring matrix_coalgebra(n) → Hom(A,A)."""
    fld = F.field
    if isinstance(images, Mapping):
        images = [images[lab] for lab in F.labels]
    mats = [[[fld(x) for x in row] for row in m] for m in images]
    n = n if n is not None else (len(mats[0]) if mats else 1)
    mapped = map_presentation(F, MatrixTarget(n, fld.one), mats, name="θ respects the relations")
    report = mapped.report
    if not report.ok:
        return None, report
    S = matrix_units(n, fld)
    theta = [[mapped.image_of(i, r) for r in range(F.B.dim)] for i in range(F.A.dim)]
    sigma = tuple(
        tuple(tuple(theta[i][r][a][b] for r in range(F.B.dim)) for a in range(n) for b in range(n))
        for i in range(F.A.dim)
    )
    measuring, dual_report = dualize(ExtensionMap(F.A, S, F.B, sigma))
    report.merge(dual_report)
    if not dual_report.ok:
        raise StructureError("measuring law fails for a representation that respects the relations")
    return measuring, report  # type: ignore[return-value]


# ── the dual presentation T((Q[x]/p)°)/J ─────────────────────────────────


@dataclass
class QCalcPresentation:
    p: tuple[Fraction, ...]
    Ao: FinAlgebra
    labels: tuple[str, ...]
    relations: list[NcPoly]
    system: RewritingSystem

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": poly_str(self.p),
            "generators": list(self.labels),
            "relations": [self.system.format(r) for r in self.relations],
            "system": self.system.to_dict(),
        }


def qcalc_presentation(
    p: Sequence[Any],
    bound: int = DEFAULT_BOUND,
    rule_cap: int = DEFAULT_RULE_CAP,
    field_: FieldSpec = QQ,
    schedule: random.Random | None = None,
) -> QCalcPresentation:
    """One relation per α_j: p₀ε(α_j) + p₁α_j + Σ_{i≥2} p_i Δ^{i−1}α_j as words."""
    coeffs = poly_from(p)
    Ao = quotient_poly(coeffs, field_=field_)
    H = dual_coalgebra(Ao)
    n = Ao.dim
    labels = tuple(f"a{j}" for j in range(n))
    relations: list[NcPoly] = []
    for j in range(n):
        rel: NcPoly = {}
        if coeffs[0]:
            nc_add_into(rel, nc_const(coeffs[0] * H.counit[j], field_))
        nc_add_into(rel, {(j,): field_(coeffs[1])})
        for i in range(2, len(coeffs)):
            if coeffs[i]:
                nc_add_into(rel, {slots: c for slots, c in iterated_coproduct(H, j, i).items()}, field_(coeffs[i]))
        relations.append(rel)
    system = complete(relations, labels, None, bound, field_, rule_cap, schedule)
    return QCalcPresentation(coeffs, Ao, labels, relations, system)


def verify_qcalc_equivalence(
    p: Sequence[Any], bound: int = DEFAULT_BOUND, rule_cap: int = DEFAULT_RULE_CAP
) -> CheckReport:
    coeffs = poly_from(p)
    Q = qcalc_presentation(coeffs, bound, rule_cap)
    F = build_F(Q.Ao, Q.Ao, bound, rule_cap, verify=False)
    report = CheckReport(f"T((Q[x]/{poly_str(coeffs)})°)/J against the matrix method")
    # x as a vector of Q[x]/p; for deg p = 1 it is the scalar -p0
    x = Q.Ao.basis(1) if Q.Ao.dim > 1 else (Q.Ao.field(-coeffs[0]),)
    images: list[NcPoly] = []
    for r in range(Q.Ao.dim):
        img: NcPoly = {}
        for i, xi in enumerate(x):
            if xi:
                nc_add_into(img, F.f(i, r), xi)
        images.append(img)
    target = PresentationTarget(F.system)
    for rel in Q.relations:
        report.tick()
        if not target.is_zero(evaluate(rel, images, target)):
            report.add("α_r ↦ f_{x,r} kills relation", (Q.system.format(rel),))
    seq_q = Q.system.dimension_sequence(bound)
    seq_f = F.dimension_sequence(bound)
    report.note("dual presentation sequence", seq_q)
    report.note("matrix method sequence", seq_f)
    report.tick()
    if seq_q != seq_f:
        report.add("dimension sequences agree", (bound,), f"{seq_q} != {seq_f}")
    return report


# ── F(k[d]/d², k[d]/d²) against H⁻ ───────────────────────────────────────


QUOTED_DUAL_NUMBER_RELATIONS = "{0}{1} = {1}{0} = 0 = {0}^2"


def dual_number_presentation(bound: int = DEFAULT_BOUND, rule_cap: int = DEFAULT_RULE_CAP) -> SweedlerPresentation:
    D = dual_numbers()
    return build_F(D, D, bound, rule_cap, prefix="g")


def quoted_relation_warning(F: SweedlerPresentation) -> str | None:
    """WARN text when g0g1 = 0 is not implied by the expansion of η(d)² = 0.

    The text names the generators by the presentation's own labels.
    """
    g0, g1 = F.gen_of(1, 0), F.gen_of(1, 1)
    if F.system.normal_form({(g0, g1): F.field.one}):
        a, b = F.labels[g0], F.labels[g1]
        quoted = QUOTED_DUAL_NUMBER_RELATIONS.format(a, b)
        return (
            f"quoted relations '{quoted}' are stronger than the expansion of "
            f"η(d)² = 0, which gives only {a}^2 = 0 and {a}{b} + {b}{a} = 0; the anticommutator form is used"
        )
    return None


def pareigis_check(bound: int = 6, rule_cap: int = DEFAULT_RULE_CAP) -> CheckReport:
    """Compare F(k[d]/d², k[d]/d²) with H⁻ = ⟨x, w⟩/(x², xw + wx), w standing for 1/y."""
    F = dual_number_presentation(bound, rule_cap)
    fld = F.field
    one = fld.one
    g0, g1 = F.gen_of(1, 0), F.gen_of(1, 1)
    H = complete([{(0, 0): one}, {(0, 1): one, (1, 0): one}], ("x", "w"), None, bound, fld, rule_cap)
    report = CheckReport("Pareigis comparison")
    report.note("H⁻ relation", "xw + wx = 0 follows from xy = −yx by multiplying with w = 1/y on both sides")

    to_H = [None, None]
    to_H[g0] = {(0,): one}
    to_H[g1] = {(1,): one}
    to_F = [{(g0,): one}, {(g1,): one}]
    for rel in F.relations:
        report.tick()
        if not PresentationTarget(H).is_zero(evaluate(rel, to_H, PresentationTarget(H))):
            report.add("F relation holds in H⁻", (F.system.format(rel),))
    for rule in H.rules:
        rel = rule.as_poly(fld)
        report.tick()
        if not PresentationTarget(F.system).is_zero(evaluate(rel, to_F, PresentationTarget(F.system))):
            report.add("H⁻ relation holds in F", (H.format(rel),))

    seq_f, seq_h = F.dimension_sequence(bound), H.dimension_sequence(bound)
    report.note("F sequence", seq_f)
    report.note("H⁻ sequence", seq_h)
    report.tick()
    if seq_f != seq_h:
        report.add("dimension sequences", (bound,), f"{seq_f} != {seq_h}")

    # Δx = x⊗1 + w⊗x, Δw = w⊗w; slots are read h₍₂₎⊗h₍₁₎ on both sides
    delta_H = {0: {((0,), ()): one, ((1,), (0,)): one}, 1: {((1,), (1,)): one}}
    for hg, fg in ((0, g0), (1, g1)):
        mapped: Tensor = {}
        for (w1, w2), c in F.delta[fg].items():  # type: ignore[index]
            mapped[(tuple(0 if g == g0 else 1 for g in w1), tuple(0 if g == g0 else 1 for g in w2))] = c
        report.tick()
        if reduce_tensor(mapped, [H, H]) != reduce_tensor(delta_H[hg], [H, H]):
            report.add("Δ agrees", (H.labels[hg],), format_tensor(mapped, [H.word_str] * 2))
    report.note("slot convention", "first tensor slot is h₍₂₎; Δg0 = g0⊗1 + g1⊗g0 matches Δx = x⊗1 + w⊗x as quoted")

    eps_H = (fld.zero, fld.one)
    for hg, fg in ((0, g0), (1, g1)):
        report.tick()
        if F.epsilon[fg] != eps_H[hg]:  # type: ignore[index]
            report.add("ε agrees", (H.labels[hg],))
    report.merge(bialgebra_check(F))
    warning = quoted_relation_warning(F)
    if warning:
        report.warn(warning)
    return report


# ── F(A,A) for the conjugation algebra ───────────────────────────────────


def _anti(p: NcPoly, q: NcPoly) -> NcPoly:
    out = nc_mul(p, q)
    nc_add_into(out, nc_mul(q, p))
    return out


def _comm(p: NcPoly, q: NcPoly) -> NcPoly:
    out = nc_mul(p, q)
    nc_add_into(out, nc_mul(q, p), -1)
    return out


def _sum(field_: FieldSpec, *terms: tuple[int, NcPoly]) -> NcPoly:
    out: NcPoly = {}
    for sign, p in terms:
        nc_add_into(out, p, field_(sign))
    return out


def conjugation_identities(F: SweedlerPresentation) -> dict[str, NcPoly]:
    """η(x)² = −1, η(J)² = 1 and {η(x), η(J)} = 0 written out on the coefficient families.

    f_r and g_r are the coefficients of η(x) and η(J) along 1, x, J, xJ.
    Every entry is a polynomial that must vanish in F.
    """
    if not (F.A == F.B and F.A.labels == ("1", "x", "J", "xJ")):
        raise InputError("conjugation identities need F(A,A) over the basis 1, x, J, xJ")
    fld = F.field
    one = nc_const(1, fld)
    f1, fx, fJ, fxJ = (F.f(1, r) for r in range(4))
    g1, gx, gJ, gxJ = (F.f(2, r) for r in range(4))

    def square(a: NcPoly) -> NcPoly:
        return nc_mul(a, a)

    out: dict[str, NcPoly] = {}
    for name, (p1, px, pJ, pxJ), value in (("f", (f1, fx, fJ, fxJ), -1), ("g", (g1, gx, gJ, gxJ), 1)):
        out[f"{name}1² − {name}x² + {name}J² + {name}xJ² = {value}"] = _sum(
            fld, (1, square(p1)), (-1, square(px)), (1, square(pJ)), (1, square(pxJ)), (-value, one)
        )
        out[f"{{{name}1,{name}x}} + [{name}xJ,{name}J] = 0"] = _sum(fld, (1, _anti(p1, px)), (1, _comm(pxJ, pJ)))
        out[f"{{{name}1,{name}J}} + [{name}xJ,{name}x] = 0"] = _sum(fld, (1, _anti(p1, pJ)), (1, _comm(pxJ, px)))
        out[f"{{{name}1,{name}xJ}} + [{name}x,{name}J] = 0"] = _sum(fld, (1, _anti(p1, pxJ)), (1, _comm(px, pJ)))

    out["{f1,g1} − {fx,gx} + {fJ,gJ} + {fxJ,gxJ} = 0"] = _sum(
        fld, (1, _anti(f1, g1)), (-1, _anti(fx, gx)), (1, _anti(fJ, gJ)), (1, _anti(fxJ, gxJ))
    )
    out["{f1,gx} + {g1,fx} + [fxJ,gJ] + [gxJ,fJ] = 0"] = _sum(
        fld, (1, _anti(f1, gx)), (1, _anti(g1, fx)), (1, _comm(fxJ, gJ)), (1, _comm(gxJ, fJ))
    )
    out["{f1,gJ} + {g1,fJ} + [fxJ,gx] + [gxJ,fx] = 0"] = _sum(
        fld, (1, _anti(f1, gJ)), (1, _anti(g1, fJ)), (1, _comm(fxJ, gx)), (1, _comm(gxJ, fx))
    )
    out["{f1,gxJ} + {g1,fxJ} + [fx,gJ] + [gx,fJ] = 0"] = _sum(
        fld, (1, _anti(f1, gxJ)), (1, _anti(g1, fxJ)), (1, _comm(fx, gJ)), (1, _comm(gx, fJ))
    )
    return out


def conjugation_check(F: SweedlerPresentation) -> CheckReport:
    report = CheckReport("conjugation identities")
    for name, rel in conjugation_identities(F).items():
        report.tick()
        residue = F.system.normal_form(rel, strict=False)
        if residue:
            report.add("identity reduces to 0", (name,), F.system.format(residue))
    return report


# ── chain complexes as comodules ─────────────────────────────────────────


@dataclass(frozen=True)
class ChainComplex:
    """d[i-1] is d_i: M_i → M_{i−1}, a dims[i-1] × dims[i] matrix."""

    dims: tuple[int, ...]
    d: tuple[Matrix, ...]
    field: FieldSpec = QQ

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def offset(self, degree: int) -> int:
        return sum(self.dims[:degree])

    def degree_of(self, v: int) -> int:
        for deg in range(len(self.dims)):
            if v < self.offset(deg + 1):
                return deg
        raise InputError(f"basis index {v} out of range")

    def differential(self, v: int) -> dict[int, Scalar]:
        deg = self.degree_of(v)
        if deg == 0:
            return {}
        col = v - self.offset(deg)
        base = self.offset(deg - 1)
        mat = self.d[deg - 1]
        return {base + k: self.field(mat[k][col]) for k in range(self.dims[deg - 1]) if mat[k][col]}

    def validate(self) -> None:
        if len(self.d) != self.top:
            raise InputError(f"{len(self.dims)} degrees need {self.top} differentials, got {len(self.d)}")
        for i, mat in enumerate(self.d, start=1):
            if len(mat) != self.dims[i - 1] or any(len(row) != self.dims[i] for row in mat):
                raise InputError(f"d_{i} must be {self.dims[i - 1]}x{self.dims[i]}")
        for i in range(1, self.top):
            prod = mat_mul([[self.field(x) for x in row] for row in self.d[i - 1]],
                           [[self.field(x) for x in row] for row in self.d[i]])
            if any(v for row in prod for v in row):
                raise StructureError(f"d∘d != 0 at degree {i + 1}", (i + 1,))


@dataclass
class GradedComodule:
    F: SweedlerPresentation
    complex: ChainComplex
    coaction: list[Tensor]
    shift: int

    def _rho(self, v: int) -> Tensor:
        return self.coaction[v]

    def check(self) -> CheckReport:
        """(Δ⊗1)ρ = (1⊗ρ)ρ and (ε⊗1)ρ = id, legs reduced."""
        F = self.F
        sysm = F.system
        one = F.field.one
        report = CheckReport(f"comodule axioms (exponent i{self.shift:+d})")
        for v, rho in enumerate(self.coaction):
            left: Tensor = {}
            right: Tensor = {}
            for (w, vec), c in rho.items():
                for (u1, u2), c1 in apply_multiplicative({w: one}, F.delta or [], [sysm, sysm], one).items():
                    nc_add_into(left, {(u1, u2, vec): c * c1})
                for (w2, vec2), c2 in self._rho(vec[0]).items():
                    nc_add_into(right, {(w, w2, vec2): c * c2})
            systems = [sysm, sysm, None]
            report.tick()
            if reduce_tensor(left, systems) != reduce_tensor(right, systems):
                report.add("coassociative", (f"m{v}",), f"degree {self.complex.degree_of(v)}")
            counit: dict[int, Scalar] = {}
            for (w, vec), c in rho.items():
                nc_add_into(counit, {vec[0]: c * _epsilon_poly(F, {w: one})})
            report.tick()
            if counit != {v: one}:
                report.add("counit", (f"m{v}",))
        return report

    def to_dict(self) -> dict[str, Any]:
        legs = [self.F.leg(), lambda w: f"m{w[0]}"]
        return {
            "dims": list(self.complex.dims),
            "exponent": f"i{self.shift:+d}",
            "coaction": {f"m{v}": format_tensor(t, legs) for v, t in enumerate(self.coaction)},
        }


def chain_to_comodule(
    C: ChainComplex, F: SweedlerPresentation | None = None, shift: int = -1, bound: int = DEFAULT_BOUND
) -> GradedComodule:
    """ρ(m) = g1^i⊗m + g0·g1^(i+shift)⊗dm on M_i; ρ = 1⊗m on M_0."""
    C.validate()
    F = F or dual_number_presentation(bound)
    g0, g1 = F.gen_of(1, 0), F.gen_of(1, 1)
    one = F.field.one
    coaction: list[Tensor] = []
    for v in range(sum(C.dims)):
        deg = C.degree_of(v)
        rho: Tensor = {((g1,) * deg, (v,)): one}
        if deg >= 1:
            exp = deg + shift
            if exp < 0:
                raise InputError(f"exponent {exp} is negative at degree {deg}")
            for u, c in C.differential(v).items():
                nc_add_into(rho, {((g0,) + (g1,) * exp, (u,)): c})
        coaction.append(reduce_tensor(rho, [F.system, None]))
    return GradedComodule(F, C, coaction, shift)
