"""Text → objects and objects ↔ JSON for every CLI input.

Handles three kinds of input: polynomial text (rational polynomials in x,
number-field elements in t, central polynomials in L, noncommutative
polynomials over generator labels), catalog specs like
``quotient_poly(x^2+1)``, and JSON documents (inline, or a path to a
``.json`` file). Every syntax problem is raised as an InputError carrying
the character offset, or the line and column for JSON.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Generic, Sequence, TypeVar

from app.algebra.coalg import (
    COALGEBRA_CATALOG,
    ExtensionMap,
    FinCoalgebra,
    MeasuringData,
    build_coalgebra,
    measuring_from_maps,
    raw_coalgebra,
)
from app.algebra.errors import FieldError, InputError
from app.algebra.exactnum import (
    QQ,
    CentralPoly,
    Coeffs,
    FieldSpec,
    Matrix,
    Scalar,
    number_field,
    poly_add,
    poly_mul,
    poly_neg,
    poly_str,
)
from app.algebra.finalg import CATALOG, FinAlgebra, build_algebra, raw_algebra
from app.algebra.freealg import NcPoly, nc_add, nc_const, nc_gen, nc_mul, nc_scale
from app.algebra.modcomod import FinModule, module, natural_module, regular_module, trivial_module
from app.algebra.sweedler import ChainComplex

T = TypeVar("T")


# ═══════════════════════════════════════════════════════════════════════
# TOKENS
# ═══════════════════════════════════════════════════════════════════════

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*./^(),;]))")


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | op | end
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise InputError(f"unexpected character {text[bad]!r}", offset=bad, text=text)
        kind = m.lastgroup or "op"
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ═══════════════════════════════════════════════════════════════════════
# POLYNOMIAL GRAMMAR
#   expr  := [+|-] term ((+|-) term)*
#   term  := power ((*|.|/ NUM|juxtaposition) power)*
#   power := atom [^ NUM]
#   atom  := NUM | IDENT | ( expr )
# ═══════════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class Ring(Generic[T]):
    """The operations a parse evaluates into."""

    const: Callable[[Fraction], T]
    var: Callable[[str, int], T]
    add: Callable[[T, T], T]
    neg: Callable[[T], T]
    mul: Callable[[T, T], T]


class _PolyParser(Generic[T]):
    def __init__(self, text: str, ring: Ring[T]) -> None:
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message: str, tok: Token | None = None) -> InputError:
        tok = tok or self.tok
        return InputError(message, offset=tok.offset, text=self.text)

    def take(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def parse(self) -> T:
        if self.tok.kind == "end":
            raise self.fail("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.fail(f"unexpected {self.tok.text!r}")
        return value

    def expr(self) -> T:
        negate = False
        if self.tok.kind == "op" and self.tok.text in ("+", "-"):
            negate = self.take().text == "-"
        value = self.term()
        if negate:
            value = self.ring.neg(value)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = self.ring.add(value, rhs if op == "+" else self.ring.neg(rhs))
        return value

    def term(self) -> T:
        value = self.power()
        while True:
            tok = self.tok
            if tok.kind == "op" and tok.text in ("*", "."):
                self.take()
                value = self.ring.mul(value, self.power())
            elif tok.kind == "op" and tok.text == "/":
                self.take()
                den = self.tok
                if den.kind != "num":
                    raise self.fail("only division by an integer literal is supported")
                self.take()
                if int(den.text) == 0:
                    raise self.fail("division by zero", den)
                value = self.ring.mul(value, self.ring.const(Fraction(1, int(den.text))))
            elif tok.kind == "ident" or (tok.kind == "op" and tok.text == "("):
                value = self.ring.mul(value, self.power())
            else:
                return value

    def power(self) -> T:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            if self.tok.kind != "num":
                raise self.fail("expected a non-negative integer exponent")
            k = int(self.take().text)
            out = self.ring.const(Fraction(1))
            for _ in range(k):
                out = self.ring.mul(out, base)
            return out
        return base

    def atom(self) -> T:
        tok = self.tok
        if tok.kind == "num":
            self.take()
            return self.ring.const(Fraction(int(tok.text)))
        if tok.kind == "ident":
            self.take()
            return self.ring.var(tok.text, tok.offset)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            value = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                raise self.fail("expected ')'")
            self.take()
            return value
        if tok.kind == "end":
            raise self.fail("unexpected end of input")
        raise self.fail(f"unexpected {tok.text!r}")


def _univariate(var: str, text: str) -> Ring[Coeffs]:
    def variable(name: str, offset: int) -> Coeffs:
        if name != var:
            raise InputError(f"unknown variable {name!r}; expected {var!r}", offset=offset, text=text)
        return (Fraction(0), Fraction(1))

    return Ring(
        const=lambda c: (c,) if c else (),
        var=variable,
        add=poly_add,
        neg=poly_neg,
        mul=poly_mul,
    )


def parse_poly(text: str, var: str = "x") -> Coeffs:
    """Rational polynomial in one variable, coefficients low → high."""
    return _PolyParser(str(text), _univariate(var, str(text))).parse()


def parse_scalar(value: Any, field_: FieldSpec = QQ) -> Scalar:
    """A field element from an int, Fraction, Scalar or text such as ``-3/2`` or ``t + 1``."""
    if isinstance(value, Scalar):
        return field_(value)
    if isinstance(value, (int, Fraction)):
        return field_(value)
    var = field_.var if field_.kind != QQ.kind else "t"
    coeffs = parse_poly(str(value), var)
    try:
        return field_.from_coords(coeffs)
    except FieldError as exc:
        raise InputError(f"{value!r} is not an element of {field_}", offset=0, text=str(value)) from exc


def parse_central(value: Any, field_: FieldSpec = QQ) -> CentralPoly:
    """Polynomial in the central variable L (λ)."""
    if isinstance(value, CentralPoly):
        return value
    text = str(value)

    def variable(name: str, offset: int) -> CentralPoly:
        if name == "L":
            return CentralPoly.lam(field_)
        if field_.kind != QQ.kind and name == field_.var:
            return CentralPoly.const(field_.gen, field_)
        raise InputError(f"unknown variable {name!r}; expected 'L'", offset=offset, text=text)

    ring: Ring[CentralPoly] = Ring(
        const=lambda c: CentralPoly.const(c, field_),
        var=variable,
        add=lambda a, b: a + b,
        neg=lambda a: -a,
        mul=lambda a, b: a * b,
    )
    return _PolyParser(text, ring).parse()


def parse_ncpoly(text: str, labels: Sequence[str], field_: FieldSpec = QQ) -> NcPoly:
    """Noncommutative polynomial over generator labels; ``.`` or ``*`` multiply in order."""
    index = {lab: g for g, lab in enumerate(labels)}

    def variable(name: str, offset: int) -> NcPoly:
        if name in index:
            return nc_gen(index[name], field_)
        if field_.kind != QQ.kind and name == field_.var:
            return nc_const(field_.gen, field_)
        raise InputError(
            f"unknown generator {name!r}; known: {', '.join(labels) or '(none)'}", offset=offset, text=text
        )

    ring: Ring[NcPoly] = Ring(
        const=lambda c: nc_const(c, field_),
        var=variable,
        add=nc_add,
        neg=lambda p: nc_scale(-1, p),
        mul=nc_mul,
    )
    return _PolyParser(str(text), ring).parse()


def parse_int_list(text: str, name: str = "list") -> list[int]:
    """``2,1`` or ``2 1`` → [2, 1]."""
    parts = [p for p in re.split(r"[,\s]+", str(text).strip()) if p]
    out: list[int] = []
    offset = 0
    for part in parts:
        offset = str(text).find(part, offset)
        if not re.fullmatch(r"-?\d+", part):
            raise InputError(f"{name}: expected an integer, got {part!r}", offset=offset, text=str(text))
        out.append(int(part))
    return out


def parse_scalar_list(text: str, field_: FieldSpec = QQ, sep: str = ";") -> list[Scalar]:
    """Semicolon-separated field elements, e.g. ``t; -t``."""
    return [parse_scalar(part.strip(), field_) for part in str(text).split(sep) if part.strip()]


# ═══════════════════════════════════════════════════════════════════════
# CATALOG SPECS
# ═══════════════════════════════════════════════════════════════════════

_SPEC = re.compile(r"^\s*(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*(?:\((?P<args>.*)\))?\s*$", re.S)

MODULE_CATALOG = ("regular", "trivial", "natural")


@dataclass(frozen=True)
class CatalogSpec:
    name: str
    args: tuple[str, ...]
    text: str
    args_offset: int = 0

    def poly_arg(self) -> Coeffs:
        """The argument parsed as a polynomial in x; offsets refer to the whole spec."""
        if not self.args:
            raise InputError(f"{self.name} needs a polynomial, e.g. {self.name}(x^2+1)",
                             offset=len(self.text), text=self.text)
        inner = ",".join(self.args)
        try:
            return parse_poly(inner)
        except InputError as exc:
            lead = len(self.text[self.args_offset:]) - len(self.text[self.args_offset:].lstrip())
            raise InputError(exc.message, offset=self.args_offset + lead + (exc.offset or 0), text=self.text) from None


def is_json_ref(text: str) -> bool:
    t = str(text).strip()
    return t.startswith(("{", "[", "@")) or t.endswith(".json")


def parse_catalog_spec(text: str, valid: Sequence[str], kind: str = "algebra") -> CatalogSpec:
    m = _SPEC.match(str(text))
    if m is None:
        raise InputError(f"cannot read {kind} spec {text!r}", offset=0, text=str(text))
    name = m.group("name")
    if name not in valid or name == "raw":
        names = ", ".join(sorted(n for n in valid if n != "raw"))
        raise InputError(
            f"unknown {kind} {name!r}; valid {kind} catalog entries: {names} (or a JSON document)",
            offset=m.start("name"),
            text=str(text),
        )
    args = m.group("args")
    return CatalogSpec(
        name,
        tuple(a.strip() for a in args.split(",")) if args else (),
        str(text),
        m.start("args") if args else len(str(text)),
    )


def check_spec(text: str, kind: str) -> None:
    """Syntax and catalog-name check, without building anything."""
    if is_json_ref(text) or str(text).strip() == "same":
        return
    valid = {"algebra": CATALOG, "coalgebra": COALGEBRA_CATALOG}.get(kind, MODULE_CATALOG)
    spec = parse_catalog_spec(text, list(valid), kind)
    if spec.name == "quotient_poly":
        spec.poly_arg()


def _int_arg(spec: CatalogSpec, default: int | None = None) -> int:
    if not spec.args:
        if default is None:
            raise InputError(f"{spec.name} needs an integer argument", offset=len(spec.text), text=spec.text)
        return default
    try:
        return int(spec.args[0])
    except ValueError:
        raise InputError(f"{spec.name}: expected an integer, got {spec.args[0]!r}",
                         offset=spec.text.find(spec.args[0]), text=spec.text) from None


def load_algebra(text: str, field_: FieldSpec = QQ) -> FinAlgebra:
    if is_json_ref(text):
        return algebra_from_json(load_json(text))
    spec = parse_catalog_spec(text, list(CATALOG), "algebra")
    if spec.name == "quotient_poly":
        return build_algebra("quotient_poly", p=spec.poly_arg(), field_=field_)
    if spec.name in ("matrix_algebra", "matrix_units"):
        return build_algebra(spec.name, n=_int_arg(spec), field_=field_)
    return build_algebra(spec.name, field_=field_)


def load_coalgebra(text: str, field_: FieldSpec = QQ) -> FinCoalgebra:
    if is_json_ref(text):
        return coalgebra_from_json(load_json(text))
    spec = parse_catalog_spec(text, list(COALGEBRA_CATALOG), "coalgebra")
    if spec.name in ("matrix_coalgebra", "jet"):
        return build_coalgebra(spec.name, n=_int_arg(spec), field_=field_)
    return build_coalgebra(spec.name, field_=field_)


def load_module(text: str, A: FinAlgebra) -> FinModule:
    """``regular``, ``trivial(k)``, ``natural(n)`` (over matrix_units) or JSON with an action."""
    if is_json_ref(text):
        return module_from_json(load_json(text), A)
    spec = parse_catalog_spec(text, list(MODULE_CATALOG), "module")
    if spec.name == "regular":
        return regular_module(A)
    if spec.name == "trivial":
        return trivial_module(A, _int_arg(spec, 1))
    n = _int_arg(spec)
    M = natural_module(n, A if A.dim == n * n else None)
    if M.algebra != A:
        raise InputError(f"natural({n}) is a module over matrix_units({n}), not {A.name}", offset=0, text=text)
    return M


def load_field(text: str | None) -> FieldSpec:
    """``QQ`` (default) or a modulus in t such as ``t^2+1``."""
    if text is None or str(text).strip() in ("", "QQ"):
        return QQ
    m = re.match(r"^\s*([A-Za-z])\s*:\s*(.*)$", str(text))
    var, body = (m.group(1), m.group(2)) if m else ("t", str(text))
    try:
        return number_field(parse_poly(body, var), var)
    except FieldError as exc:
        raise InputError(f"field {text!r}: {exc}", offset=0, text=str(text)) from exc


# ═══════════════════════════════════════════════════════════════════════
# JSON
# ═══════════════════════════════════════════════════════════════════════


def load_json(text: str) -> Any:
    """Inline JSON, ``@path`` or a path ending in ``.json``."""
    raw = str(text).strip()
    source = "inline JSON"
    if raw.startswith("@") or (raw.endswith(".json") and not raw.startswith(("{", "["))):
        path = Path(raw.lstrip("@"))
        if not path.exists():
            raise InputError(f"no such file: {path}")
        raw = path.read_text()
        source = str(path)
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: {exc.msg}", offset=exc.pos, text=raw, line=exc.lineno, column=exc.colno) from None


def _require(obj: Any, key: str, what: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{what}: missing key {key!r}")
    return obj[key]


def field_to_json(field_: FieldSpec) -> dict[str, Any]:
    if field_.kind == QQ.kind:
        return {"kind": "rationals"}
    return {"kind": "number_field", "modulus": poly_str(field_.modulus, field_.var), "var": field_.var}


def field_from_json(obj: Any) -> FieldSpec:
    if obj is None or obj == "QQ" or (isinstance(obj, dict) and obj.get("kind", "rationals") == "rationals"):
        return QQ
    if isinstance(obj, str):
        return load_field(obj)
    var = obj.get("var", "t")
    return load_field(f"{var}: {_require(obj, 'modulus', 'field')}")


def scalar_to_json(s: Scalar) -> str:
    return str(s)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[str(v) for v in row] for row in m]


def matrix_from_json(rows: Any, field_: FieldSpec = QQ, what: str = "matrix") -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what}: expected a list of rows")
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise InputError(f"{what}: rows have different lengths")
    return [[parse_scalar(v, field_) for v in row] for row in rows]


def central_matrix_from_json(rows: Any, field_: FieldSpec = QQ) -> Matrix:
    return [[parse_central(v, field_) for v in row] for row in rows]


def _tensor3(obj: Any, field_: FieldSpec, what: str) -> list[list[list[Scalar]]]:
    if not isinstance(obj, list):
        raise InputError(f"{what}: expected a nested list")
    return [[[parse_scalar(v, field_) for v in row] for row in block] for block in obj]


def algebra_to_json(A: FinAlgebra) -> dict[str, Any]:
    return {
        "name": A.name,
        "field": field_to_json(A.field),
        "labels": list(A.labels),
        "weights": list(A.weights),
        "unit": [scalar_to_json(v) for v in A.unit],
        "c": [[[scalar_to_json(v) for v in vec] for vec in row] for row in A.c],
    }


def algebra_from_json(obj: Any) -> FinAlgebra:
    if isinstance(obj, str):
        return load_algebra(obj)
    if isinstance(obj, dict) and "catalog" in obj:
        return load_algebra(obj["catalog"], field_from_json(obj.get("field")))
    field_ = field_from_json(obj.get("field") if isinstance(obj, dict) else None)
    return raw_algebra(
        _tensor3(_require(obj, "c", "algebra"), field_, "algebra c"),
        [parse_scalar(v, field_) for v in _require(obj, "unit", "algebra")],
        obj.get("labels"),
        obj.get("weights"),
        field_,
        obj.get("name", "raw"),
    )


def coalgebra_to_json(H: FinCoalgebra) -> dict[str, Any]:
    return {
        "name": H.name,
        "field": field_to_json(H.field),
        "labels": list(H.labels),
        "counit": [scalar_to_json(v) for v in H.counit],
        "d": [[[scalar_to_json(v) for v in row] for row in block] for block in H.d],
    }


def coalgebra_from_json(obj: Any) -> FinCoalgebra:
    if isinstance(obj, str):
        return load_coalgebra(obj)
    if isinstance(obj, dict) and "catalog" in obj:
        return load_coalgebra(obj["catalog"], field_from_json(obj.get("field")))
    field_ = field_from_json(obj.get("field") if isinstance(obj, dict) else None)
    return raw_coalgebra(
        _tensor3(_require(obj, "d", "coalgebra"), field_, "coalgebra d"),
        [parse_scalar(v, field_) for v in _require(obj, "counit", "coalgebra")],
        obj.get("labels"),
        field_,
        obj.get("name", "raw"),
    )


def measuring_to_json(m: MeasuringData) -> dict[str, Any]:
    """ρ(h_i) as dim B × dim A matrices, column j = image of a_j."""
    return {
        "H": coalgebra_to_json(m.H),
        "A": algebra_to_json(m.A),
        "B": algebra_to_json(m.B),
        "maps": [
            [[scalar_to_json(m.rho[i][j][k]) for j in range(m.A.dim)] for k in range(m.B.dim)]
            for i in range(m.H.dim)
        ],
    }


def measuring_from_json(obj: Any) -> MeasuringData:
    H = coalgebra_from_json(_require(obj, "H", "measuring"))
    A = algebra_from_json(_require(obj, "A", "measuring"))
    B = algebra_from_json(obj.get("B", obj["A"]))
    maps = [matrix_from_json(mat, B.field, f"measuring map {i}") for i, mat in enumerate(_require(obj, "maps", "measuring"))]
    return measuring_from_maps(H, A, B, maps)


def extension_to_json(e: ExtensionMap) -> dict[str, Any]:
    return {
        "A": algebra_to_json(e.A),
        "S": algebra_to_json(e.S),
        "B": algebra_to_json(e.B),
        "sigma": [[[scalar_to_json(v) for v in row] for row in block] for block in e.sigma],
    }


def extension_from_json(obj: Any) -> ExtensionMap:
    """sigma[i][s][k]: coefficient of s_s⊗b_k in σ(a_i)."""
    A = algebra_from_json(_require(obj, "A", "extension"))
    S = algebra_from_json(_require(obj, "S", "extension"))
    B = algebra_from_json(obj.get("B", obj["A"]))
    sigma = _tensor3(_require(obj, "sigma", "extension"), A.field, "extension sigma")
    if len(sigma) != A.dim or any(len(b) != S.dim or any(len(r) != B.dim for r in b) for b in sigma):
        raise InputError(f"extension sigma must be {A.dim}x{S.dim}x{B.dim}")
    return ExtensionMap(A, S, B, tuple(tuple(tuple(r) for r in b) for b in sigma))


def module_to_json(M: FinModule) -> dict[str, Any]:
    return {"name": M.name, "algebra": M.algebra.name, "action": [matrix_to_json(m) for m in M.action]}


def module_from_json(obj: Any, A: FinAlgebra) -> FinModule:
    if isinstance(obj, str):
        return load_module(obj, A)
    action = [matrix_from_json(m, A.field, f"action {i}") for i, m in enumerate(_require(obj, "action", "module"))]
    return module(A, action, obj.get("name", "module"))


def complex_to_json(C: ChainComplex) -> dict[str, Any]:
    return {"dims": list(C.dims), "d": [matrix_to_json(m) for m in C.d]}


def complex_from_json(obj: Any, field_: FieldSpec = QQ) -> ChainComplex:
    dims = _require(obj, "dims", "chain complex")
    if not isinstance(dims, list) or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise InputError("chain complex: dims must be a list of non-negative integers")
    d = tuple(matrix_from_json(m, field_, f"d_{i + 1}") for i, m in enumerate(obj.get("d", [])))
    return ChainComplex(tuple(dims), d, field_)
