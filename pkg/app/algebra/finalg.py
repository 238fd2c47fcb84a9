"""Finite-dimensional associative unital algebras given by structure constants.

``c[i][j][k]`` is the coefficient of a_k in a_i·a_j. Vectors are tuples of
Scalar in the algebra's basis. Every algebra also carries integer basis
weights; the unit has weight 0 and they become the generator weights of
F(A,B).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from app.algebra.checks import CheckReport
from app.algebra.errors import InputError, StructureError
from app.algebra.exactnum import (
    QQ,
    FieldSpec,
    Matrix,
    Scalar,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    poly_divmod,
    poly_from,
    poly_str,
)

log = logging.getLogger(__name__)

Vector = tuple[Scalar, ...]
Tensor3 = tuple[tuple[tuple[Scalar, ...], ...], ...]


@dataclass(frozen=True)
class FinAlgebra:
    field: FieldSpec
    labels: tuple[str, ...]
    c: Tensor3
    unit: Vector
    weights: tuple[int, ...]
    name: str = field(default="raw", compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def unit_first(self) -> bool:
        return self.unit == self.basis(0)

    def basis(self, i: int) -> Vector:
        one, zero = self.field.one, self.field.zero
        return tuple(one if k == i else zero for k in range(self.dim))

    def zero_vector(self) -> Vector:
        return (self.field.zero,) * self.dim

    def mul(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        out = [self.field.zero] * self.dim
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in enumerate(v):
                if not y:
                    continue
                xy = x * y
                for k, ck in enumerate(self.c[i][j]):
                    if ck:
                        out[k] = out[k] + xy * ck
        return tuple(out)

    def add(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        return tuple(x + y for x, y in zip(u, v))

    def scale(self, s: Any, u: Sequence[Scalar]) -> Vector:
        return tuple(s * x for x in u)

    def power(self, u: Sequence[Scalar], k: int) -> Vector:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"no basis element {label!r} in {self.name}; have {list(self.labels)}") from None


@dataclass(frozen=True)
class RegularRep:
    algebra: FinAlgebra
    matrices: tuple[Matrix, ...]

    def check_homomorphism(self) -> CheckReport:
        """B_r B_s = Σ_t c[r][s][t] B_t for all basis pairs."""
        A = self.algebra
        report = CheckReport("regular representation is a homomorphism")
        n = A.dim
        for r in range(n):
            for s in range(n):
                lhs = mat_mul(self.matrices[r], self.matrices[s])
                rhs = [[A.field.zero] * n for _ in range(n)]
                for t, ct in enumerate(A.c[r][s]):
                    if ct:
                        rhs = mat_add(rhs, mat_scale(ct, self.matrices[t]))
                report.tick()
                if lhs != rhs:
                    report.add("B_r B_s", (A.labels[r], A.labels[s]))
        return report


# ── construction ─────────────────────────────────────────────────────────


def tensor3(field_: FieldSpec, n: int, entry: Callable[[int, int], Sequence[Any]]) -> Tensor3:
    return tuple(tuple(tuple(field_(x) for x in entry(i, j)) for j in range(n)) for i in range(n))


def quotient_poly(p: Sequence[Any], var: str = "x", field_: FieldSpec = QQ, name: str | None = None) -> FinAlgebra:
    """Q[x]/p with basis 1, x, …, x^{n-1}; x^i has weight i."""
    m = poly_from(p)
    n = len(m) - 1
    if n < 1:
        raise InputError("quotient_poly needs a polynomial of degree >= 1")
    if m[-1] != 1:
        raise InputError(f"quotient_poly needs a monic polynomial, got {poly_str(m, var)}")
    powers: list[tuple[Fraction, ...]] = []
    for k in range(2 * n - 1):
        mono = (Fraction(0),) * k + (Fraction(1),)
        rem = poly_divmod(mono, m)[1]
        powers.append(tuple(rem) + (Fraction(0),) * (n - len(rem)))
    labels = tuple("1" if i == 0 else (var if i == 1 else f"{var}^{i}") for i in range(n))
    return FinAlgebra(
        field=field_,
        labels=labels,
        c=tensor3(field_, n, lambda i, j: powers[i + j]),
        unit=tuple(field_(1 if k == 0 else 0) for k in range(n)),
        weights=tuple(range(n)),
        name=name or f"quotient_poly({poly_str(m, var)})",
    )


def dual_numbers(field_: FieldSpec = QQ) -> FinAlgebra:
    A = quotient_poly([0, 0, 1], var="d", field_=field_, name="dual_numbers")
    return A


def base_field(field_: FieldSpec = QQ) -> FinAlgebra:
    return FinAlgebra(field_, ("1",), ((( field_.one,),),), (field_.one,), (0,), name="base_field")


def matrix_algebra(n: int, field_: FieldSpec = QQ) -> FinAlgebra:
    """M_n with basis {I} ∪ {e_ab : (a,b) ≠ (1,1)}, row-major."""
    if n < 1:
        raise InputError("matrix_algebra needs n >= 1")
    units = [(a, b) for a in range(n) for b in range(n)]
    labels = tuple("1" if (a, b) == (0, 0) else f"e{a + 1}{b + 1}" for a, b in units)

    def as_matrix(idx: int) -> list[list[int]]:
        a, b = units[idx]
        if idx == 0:
            return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return [[1 if (i, j) == (a, b) else 0 for j in range(n)] for i in range(n)]

    def coords(mat: list[list[int]]) -> list[int]:
        lead = mat[0][0]
        return [lead if idx == 0 else mat[a][b] - (lead if a == b else 0) for idx, (a, b) in enumerate(units)]

    def product(i: int, j: int) -> list[int]:
        x, y = as_matrix(i), as_matrix(j)
        return coords([[sum(x[r][k] * y[k][s] for k in range(n)) for s in range(n)] for r in range(n)])

    size = n * n
    return FinAlgebra(
        field=field_,
        labels=labels,
        c=tensor3(field_, size, product),
        unit=tuple(field_(1 if k == 0 else 0) for k in range(size)),
        weights=tuple(0 if k == 0 else 1 for k in range(size)),
        name=f"matrix_algebra({n})",
    )


def matrix_units(n: int, field_: FieldSpec = QQ) -> FinAlgebra:
    """M_n on the plain matrix-unit basis e_ab (row-major); unit is Σ e_aa.

    Coordinates of a matrix in this basis are its entries, which is what
    representation targets need. The unit is not a basis vector.
    """
    units = [(a, b) for a in range(n) for b in range(n)]

    def product(i: int, j: int) -> list[int]:
        (a, b), (b2, d) = units[i], units[j]
        return [1 if b == b2 and (x, y) == (a, d) else 0 for x, y in units]

    return FinAlgebra(
        field=field_,
        labels=tuple(f"e{a + 1}{b + 1}" for a, b in units),
        c=tensor3(field_, n * n, product),
        unit=tuple(field_(1 if a == b else 0) for a, b in units),
        weights=(1,) * (n * n),
        name=f"matrix_units({n})",
    )


def conjugation_algebra(field_: FieldSpec = QQ) -> FinAlgebra:
    """Real form of C ⋊ conjugation: basis 1, x, J, xJ with x² = −1, J² = 1, Jx = −xJ."""

    def product(i: int, j: int) -> list[int]:
        a, b = i % 2, i // 2
        cc, d = j % 2, j // 2
        sign = (-1) ** (b * cc) * (-1 if a + cc == 2 else 1)
        k = (a + cc) % 2 + 2 * ((b + d) % 2)
        return [sign if m == k else 0 for m in range(4)]

    return FinAlgebra(
        field=field_,
        labels=("1", "x", "J", "xJ"),
        c=tensor3(field_, 4, product),
        unit=(field_.one, field_.zero, field_.zero, field_.zero),
        weights=(0, 1, 1, 2),
        name="conjugation_algebra",
    )


def raw_algebra(
    c: Sequence[Sequence[Sequence[Any]]],
    unit: Sequence[Any],
    labels: Sequence[str] | None = None,
    weights: Sequence[int] | None = None,
    field_: FieldSpec = QQ,
    name: str = "raw",
) -> FinAlgebra:
    """Algebra from user-supplied constants; raises StructureError on the first failure."""
    n = len(c)
    if any(len(row) != n or any(len(v) != n for v in row) for row in c) or len(unit) != n:
        raise StructureError(f"structure constants must be {n}x{n}x{n} with a length-{n} unit")
    labels = tuple(labels) if labels else tuple(f"a{i}" for i in range(n))
    unit_vec = tuple(field_(u) for u in unit)
    if weights is None:
        weights = tuple(0 if unit_vec == tuple(field_(1 if k == i else 0) for k in range(n)) else 1
                        for i in range(n))
    A = FinAlgebra(field_, labels, tensor3(field_, n, lambda i, j: c[i][j]), unit_vec, tuple(weights), name)
    report = validate_algebra(A)
    if not report.ok:
        first = report.first()
        raise StructureError(f"{first.check} fails", first.where)
    return A


CATALOG: dict[str, Callable[..., FinAlgebra]] = {
    "quotient_poly": quotient_poly,
    "matrix_algebra": matrix_algebra,
    "dual_numbers": dual_numbers,
    "conjugation_algebra": conjugation_algebra,
    "base_field": base_field,
    "matrix_units": matrix_units,
    "raw": raw_algebra,
}


def build_algebra(name: str, **params: Any) -> FinAlgebra:
    if name not in CATALOG:
        raise InputError(f"unknown algebra {name!r}; valid: {', '.join(sorted(CATALOG))}")
    A = CATALOG[name](**params)
    log.debug("built %s (dim %d)", A.name, A.dim)
    return A


# ── checks ───────────────────────────────────────────────────────────────


def validate_algebra(A: FinAlgebra) -> CheckReport:
    """Every violated associativity or unit instance; empty iff valid."""
    report = CheckReport(f"algebra axioms: {A.name}")
    n = A.dim
    zero = A.field.zero
    for i in range(n):
        for j in range(n):
            cij = A.c[i][j]
            for k in range(n):
                for l in range(n):
                    lhs = zero
                    rhs = zero
                    for m in range(n):
                        if cij[m]:
                            lhs = lhs + cij[m] * A.c[m][k][l]
                        cjk = A.c[j][k][m]
                        if cjk:
                            rhs = rhs + cjk * A.c[i][m][l]
                    report.tick()
                    if lhs != rhs:
                        report.add("associativity", (i, j, k, l), f"{lhs} != {rhs}")
    for j in range(n):
        e_j = A.basis(j)
        report.tick(2)
        if A.mul(A.unit, e_j) != e_j:
            report.add("left unit", (j,))
        if A.mul(e_j, A.unit) != e_j:
            report.add("right unit", (j,))
    return report


def require_unit_first(A: FinAlgebra) -> None:
    if not A.unit_first:
        raise StructureError(f"{A.name}: basis element 0 must be the unit")


def regular_representation(A: FinAlgebra) -> RegularRep:
    """B_r = left multiplication by a_r; column j holds the coordinates of a_r·a_j."""
    n = A.dim
    mats = tuple([[A.c[r][j][k] for j in range(n)] for k in range(n)] for r in range(n))
    return RegularRep(A, mats)


def poly_at_matrix(p: Sequence[Any], m: Matrix) -> Matrix:
    """Horner evaluation of a rational polynomial at a square matrix."""
    coeffs = poly_from(p)
    n = len(m)
    one = m[0][0].field.one if isinstance(m[0][0], Scalar) else QQ.one
    acc = [[one - one] * n for _ in range(n)]
    eye = identity(n, one)
    for c in reversed(coeffs):
        acc = mat_add(mat_mul(acc, m), mat_scale(c, eye))
    return acc
