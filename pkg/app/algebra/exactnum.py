"""Exact scalars: rationals, simple number fields Q[t]/m(t), and polynomials
in one central variable λ.

Field arithmetic is sympy's: rationals are elements of ``sympy.QQ`` and a
number field is a ``FiniteExtension`` of it. Linear algebra goes through
``DomainMatrix``. Scalar is the thin wrapper the rest of the engine uses.

Everything here is immutable. Fields compare by value, so two FieldSpec
objects built from the same modulus are interchangeable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from sympy import Poly, Symbol
from sympy import QQ as SYMPY_QQ
from sympy.polys.agca.extensions import ExtensionElement, FiniteExtension
from sympy.polys.densearith import dup_add, dup_div, dup_mul, dup_mul_ground, dup_neg, dup_sub
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyclasses import DMP
from sympy.polys.polyerrors import NotInvertible

from app.algebra.errors import FieldError, SingularMatrixError

log = logging.getLogger(__name__)

Coeffs = tuple[Fraction, ...]

# ── rational polynomial helpers (coefficients low → high) ────────────────


def _trim(cs: Sequence[Fraction]) -> Coeffs:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _q(value: Fraction | int) -> Any:
    v = Fraction(value)
    return SYMPY_QQ(v.numerator, v.denominator)


def _fraction(c: Any) -> Fraction:
    return Fraction(int(SYMPY_QQ.numer(c)), int(SYMPY_QQ.denom(c)))


def _dup(a: Coeffs) -> list[Any]:
    """Dense sympy list, highest power first."""
    return [_q(c) for c in reversed(a)]


def _from_dup(f: Sequence[Any]) -> Coeffs:
    return _trim([_fraction(c) for c in reversed(f)])


def to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Scalar) and value.is_rational():
        return value.as_fraction()
    raise FieldError(f"cannot read {value!r} as a rational number")


def poly_from(values: Iterable[Any]) -> Coeffs:
    return _trim([to_fraction(v) for v in values])


def poly_add(a: Coeffs, b: Coeffs) -> Coeffs:
    return _from_dup(dup_add(_dup(a), _dup(b), SYMPY_QQ))


def poly_neg(a: Coeffs) -> Coeffs:
    return _from_dup(dup_neg(_dup(a), SYMPY_QQ))


def poly_sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return _from_dup(dup_sub(_dup(a), _dup(b), SYMPY_QQ))


def poly_scale(c: Fraction, a: Coeffs) -> Coeffs:
    return _from_dup(dup_mul_ground(_dup(a), _q(c), SYMPY_QQ))


def poly_mul(a: Coeffs, b: Coeffs) -> Coeffs:
    return _from_dup(dup_mul(_dup(a), _dup(b), SYMPY_QQ))


def poly_divmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise FieldError("polynomial division by zero")
    q, r = dup_div(_dup(a), _dup(b), SYMPY_QQ)
    return _from_dup(q), _from_dup(r)


def poly_degree(a: Coeffs) -> int:
    return len(a) - 1


def _sympy_poly(a: Coeffs, var: str) -> Poly:
    return Poly(_dup(a), Symbol(var), domain=SYMPY_QQ)


def poly_str(a: Coeffs, var: str = "x") -> str:
    """Render like ``x^2 - 3/2*x + 1`` (highest power first)."""
    if not a:
        return "0"
    parts: list[str] = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ── fields ───────────────────────────────────────────────────────────────

RATIONALS = "rationals"
NUMBER_FIELD = "number_field"


@dataclass(frozen=True)
class FieldSpec:
    kind: str = RATIONALS
    modulus: Coeffs = ()
    var: str = "t"

    @property
    def degree(self) -> int:
        return 1 if self.kind == RATIONALS else len(self.modulus) - 1

    @property
    def domain(self) -> Any:
        """The sympy domain the scalars live in."""
        return _sympy_domain(self)

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.domain.zero)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.domain.one)

    @property
    def gen(self) -> "Scalar":
        if self.kind == RATIONALS:
            raise FieldError("the rationals have no generator t")
        return Scalar(self, self.domain.generator)

    def __call__(self, value: Any) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                if value.is_rational():
                    return self._rational(value.as_fraction())
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        return self._rational(to_fraction(value))

    def _rational(self, c: Fraction) -> "Scalar":
        if self.kind == RATIONALS:
            return Scalar(self, _q(c))
        return Scalar(self, _residue(self.domain, [_q(c)]))

    def from_coords(self, coords: Iterable[Any]) -> "Scalar":
        cs = poly_from(coords)
        if self.kind == RATIONALS:
            if len(cs) > 1:
                raise FieldError("rational scalar given with a t-coefficient")
            return self._rational(cs[0] if cs else Fraction(0))
        return Scalar(self, _residue(self.domain, _dup(cs)))

    def __str__(self) -> str:
        if self.kind == RATIONALS:
            return "QQ"
        return f"QQ[{self.var}]/({poly_str(self.modulus, self.var)})"


QQ = FieldSpec()


@lru_cache(maxsize=None)
def _sympy_domain(field: FieldSpec) -> Any:
    if field.kind == RATIONALS:
        return SYMPY_QQ
    return FiniteExtension(_sympy_poly(field.modulus, field.var))


def _residue(ext: FiniteExtension, dup: list[Any]) -> ExtensionElement:
    return ExtensionElement(DMP.from_list(dup, 0, SYMPY_QQ) % ext.mod, ext)


def number_field(modulus: Iterable[Any], var: str = "t", assume_irreducible: bool = False) -> FieldSpec:
    """Build Q[t]/m(t); m must be monic and irreducible over Q."""
    m = poly_from(modulus)
    if len(m) < 2:
        raise FieldError("modulus must have degree >= 1")
    if m[-1] != 1:
        raise FieldError(f"modulus {poly_str(m, var)} is not monic")
    if not assume_irreducible and len(m) > 2:
        _, factors = _sympy_poly(m, var).factor_list()
        if len(factors) > 1 or (factors and factors[0][1] > 1):
            shown = "*".join(
                f"({f.as_expr()})" if e == 1 else f"({f.as_expr()})^{e}" for f, e in factors
            )
            raise FieldError(f"reducible: {shown}")
    return FieldSpec(NUMBER_FIELD, m, var)


# ── scalars ──────────────────────────────────────────────────────────────


class Scalar:
    """Element of a FieldSpec wrapping the sympy domain element ``rep``.

    ``coeffs`` is the reduced residue as Fractions, low → high.
    """

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldSpec, rep: Any) -> None:
        self.field = field
        self.rep = rep

    # ── coercion ──
    def _lift(self, other: Any) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other
            if other.is_rational():
                return self.field(other)
            if self.is_rational():
                return other
            raise FieldError(f"mixed fields {self.field} and {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented  # type: ignore[return-value]

    @property
    def coeffs(self) -> Coeffs:
        if self.field.kind == RATIONALS:
            return (_fraction(self.rep),) if self.rep else ()
        return _from_dup(self.rep.rep.to_list())

    def is_rational(self) -> bool:
        return self.field.kind == RATIONALS or self.rep.is_ground

    def as_fraction(self) -> Fraction:
        if self.field.kind == RATIONALS:
            return _fraction(self.rep)
        if not self.rep.is_ground:
            raise FieldError(f"{self} is not rational")
        return _fraction(self.rep.to_ground()) if self.rep else Fraction(0)

    def coords(self) -> tuple[Fraction, ...]:
        cs = self.coeffs
        return cs + (Fraction(0),) * (self.field.degree - len(cs))

    # ── arithmetic ──
    def __add__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.field is not self.field and o.field != self.field:
            return o + self
        return Scalar(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.rep)

    def __sub__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.field is not self.field and o.field != self.field:
            return o * self
        return Scalar(self.field, self.rep * o.rep)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.rep:
            raise FieldError("division by zero")
        if self.field.kind == RATIONALS:
            return Scalar(self.field, SYMPY_QQ.one / self.rep)
        try:
            return Scalar(self.field, self.rep.inverse())
        except NotInvertible as exc:
            raise FieldError(f"{self} is not invertible; modulus is reducible") from exc

    def __truediv__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "Scalar":
        return self.inverse() * other

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.field, self.rep**k)

    # ── comparison ──
    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return self.rep == other.rep
            return self.is_rational() and other.is_rational() and self.as_fraction() == other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.as_fraction())
        return hash((self.field.modulus, self.coeffs))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.as_fraction())
        return poly_str(self.coeffs, self.field.var)

    def __repr__(self) -> str:
        return f"Scalar({self})"


# ── central polynomials in λ ─────────────────────────────────────────────


class CentralPoly:
    """Polynomial in one commuting variable λ (written ``L`` in text)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[Any] = ()) -> None:
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def const(cls, value: Any, field: FieldSpec = QQ) -> "CentralPoly":
        return cls(field, [value])

    @classmethod
    def lam(cls, field: FieldSpec = QQ) -> "CentralPoly":
        return cls(field, [0, 1])

    def _lift(self, other: Any) -> "CentralPoly":
        if isinstance(other, CentralPoly):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return CentralPoly(self.field, [other])
        return NotImplemented  # type: ignore[return-value]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: Any) -> "CentralPoly":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        zero = self.field.zero
        return CentralPoly(
            self.field,
            [
                (self.coeffs[i] if i < len(self.coeffs) else zero)
                + (o.coeffs[i] if i < len(o.coeffs) else zero)
                for i in range(n)
            ],
        )

    __radd__ = __add__

    def __neg__(self) -> "CentralPoly":
        return CentralPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: Any) -> "CentralPoly":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "CentralPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "CentralPoly":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return CentralPoly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return CentralPoly(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "CentralPoly":
        inv = self.field(other).inverse()
        return CentralPoly(self.field, [c * inv for c in self.coeffs])

    def __pow__(self, k: int) -> "CentralPoly":
        out = CentralPoly.const(1, self.field)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, at: Any) -> Scalar:
        x = self.field(at)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CentralPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (Scalar, int, Fraction)):
            return self.coeffs == CentralPoly(self.field, [other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        if all(c.is_rational() for c in self.coeffs):
            return poly_str(tuple(c.as_fraction() for c in self.coeffs), "L")
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("*L" if k == 1 else f"*L^{k}")
            terms.append(f"({c}){mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"CentralPoly({self})"


# ── matrices (lists of rows) ─────────────────────────────────────────────

Matrix = list[list[Any]]


def identity(n: int, one: Any = None) -> Matrix:
    one = QQ.one if one is None else one
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int, zero: Any = None) -> Matrix:
    zero = QQ.zero if zero is None else zero
    return [[zero] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = None
            for k, x in enumerate(row):
                if not x:
                    continue
                y = b[k][j]
                if not y:
                    continue
                acc = x * y if acc is None else acc + x * y
            new.append(acc if acc is not None else (row[0] - row[0]) if row else 0)
        out.append(new)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: Any, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_pow(a: Matrix, k: int, one: Any = None) -> Matrix:
    out = identity(len(a), one if one is not None else _one_like(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_vec(a: Matrix, v: Sequence[Any]) -> list[Any]:
    return [sum((x * y for x, y in zip(row, v)), row[0] - row[0]) for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _one_like(a: Matrix) -> Any:
    x = a[0][0]
    if isinstance(x, (Scalar, CentralPoly)):
        return x.field.one if isinstance(x, Scalar) else CentralPoly.const(1, x.field)
    return QQ.one


def _domain_matrix(rows: Matrix, field: FieldSpec) -> DomainMatrix:
    cols = len(rows[0]) if rows else 0
    return DomainMatrix([[field(x).rep for x in row] for row in rows], (len(rows), cols), field.domain)


def mat_inv(m: Matrix) -> Matrix:
    """Inverse by row reduction of [m | 1]; raises SingularMatrixError at the
    first column that has no pivot."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise FieldError("mat_inv needs a square matrix")
    if n == 0:
        return []
    field = field_of(x for row in m for x in row)
    augmented = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots = _domain_matrix(augmented, field).rref(method="GJ")
    missing = next((c for c in range(n) if c not in pivots), None)
    if missing is not None:
        raise SingularMatrixError(stage=missing, size=n)
    return [[Scalar(field, x) for x in row[n:]] for row in reduced.to_list()]


def nullspace(m: Matrix, field: FieldSpec = QQ) -> list[list[Scalar]]:
    """Basis of {v : m v = 0} as a list of column vectors."""
    if not m or not m[0]:
        return []
    reduced, pivots = _domain_matrix(m, field).rref(method="GJ")
    basis = reduced.nullspace_from_rref(pivots)
    return [[Scalar(field, x) for x in row] for row in basis.to_list()]


def field_of(values: Iterable[Any]) -> FieldSpec:
    seen = QQ
    for v in values:
        if isinstance(v, Scalar):
            if not v.is_rational():
                return v.field
            seen = v.field if seen == QQ else seen
    return seen
