from __future__ import annotations

import json
from fractions import Fraction

import pytest

from app import config
from app.algebra.coalg import derivation_pair, measuring_from_maps, verify_extension, verify_measuring
from app.algebra.errors import InputError
from app.algebra.finalg import dual_numbers, quotient_poly
from app.utils import converter


# ── polynomial text ──────────────────────────────────────────────────────


@pytest.mark.parametrize("text,coeffs", [
    ("x^2+1", (1, 0, 1)),
    ("x^2 + 2 x", (0, 2, 1)),
    ("(x-1)(x-2)", (2, -3, 1)),
    ("-x^3/2 + 1", (1, 0, 0, Fraction(-1, 2))),
    ("x*x - x.x", ()),
])
def test_parse_poly(text, coeffs):
    assert converter.parse_poly(text) == tuple(Fraction(c) for c in coeffs)


@pytest.mark.parametrize("text,offset,match", [
    ("x^2 + y", 6, "unknown variable"),
    ("x^2 + $", 6, "unexpected character"),
    ("x/0", 2, "division by zero"),
    ("(x + 1", 6, r"expected '\)'"),
    ("", 0, "empty expression"),
])
def test_parse_poly_reports_the_offset(text, offset, match):
    with pytest.raises(InputError, match=match) as info:
        converter.parse_poly(text)
    assert info.value.offset == offset


def test_parse_scalar(gaussian):
    assert converter.parse_scalar("-3/2") == Fraction(-3, 2)
    assert converter.parse_scalar("t + 1", gaussian) == gaussian.from_coords([1, 1])
    assert converter.parse_scalar(4, gaussian) == 4


def test_parse_ncpoly():
    p = converter.parse_ncpoly("f0.f1 - 2*f1", ["f0", "f1"])
    assert p == {(0, 1): 1, (1,): -2}
    with pytest.raises(InputError, match="known: f0, f1"):
        converter.parse_ncpoly("f2", ["f0", "f1"])


def test_parse_central():
    assert converter.parse_central("L^2 - 1").evaluate(3) == 8


def test_parse_int_list():
    assert converter.parse_int_list("2,1") == [2, 1]
    assert converter.parse_int_list("1 2 3") == [1, 2, 3]
    with pytest.raises(InputError) as info:
        converter.parse_int_list("2,a", "--sigma")
    assert info.value.offset == 2


def test_parse_scalar_list(gaussian):
    assert converter.parse_scalar_list("t; -t", gaussian) == [gaussian.gen, -gaussian.gen]


# ── catalog specs ────────────────────────────────────────────────────────


def test_load_algebra_from_catalog():
    A = converter.load_algebra("quotient_poly(x^2+1)")
    assert A.c == quotient_poly([1, 0, 1]).c
    assert converter.load_algebra("matrix_algebra(2)").dim == 4


def test_unknown_catalog_name_lists_valid_entries():
    with pytest.raises(InputError, match="valid algebra catalog entries") as info:
        converter.load_algebra("octonions")
    assert info.value.offset == 0
    assert "raw" not in info.value.message


def test_polynomial_error_offset_is_relative_to_the_whole_spec():
    with pytest.raises(InputError) as info:
        converter.load_algebra("quotient_poly(x^2+y)")
    assert info.value.offset == 18


def test_quotient_poly_needs_an_argument():
    with pytest.raises(InputError, match="needs a polynomial"):
        converter.load_algebra("quotient_poly")


def test_load_coalgebra_and_modules():
    assert converter.load_coalgebra("jet(3)").dim == 4
    D = dual_numbers()
    assert converter.load_module("trivial(2)", D).dim == 2
    assert converter.load_module("regular", D).dim == 2
    with pytest.raises(InputError, match="natural"):
        converter.load_module("natural(2)", D)


def test_load_field(gaussian):
    assert converter.load_field("QQ") == converter.load_field(None)
    assert converter.load_field("t^2+1") == gaussian
    with pytest.raises(InputError, match="reducible"):
        converter.load_field("t^2-1")


def test_check_spec_accepts_json_and_same():
    converter.check_spec('{"catalog": "dual_numbers"}', "algebra")
    converter.check_spec("same", "algebra")
    with pytest.raises(InputError):
        converter.check_spec("cofree", "coalgebra")


# ── JSON ─────────────────────────────────────────────────────────────────


def test_load_json_reports_line_and_column():
    with pytest.raises(InputError) as info:
        converter.load_json('{\n  "a": }')
    assert info.value.line == 2
    assert info.value.column is not None
    assert info.value.describe().startswith("line 2")


def test_load_json_from_file(tmp_path):
    path = tmp_path / "z.json"
    path.write_text(json.dumps([[0, 1], [0, 0]]))
    assert converter.load_json(str(path)) == [[0, 1], [0, 0]]
    assert converter.load_json(f"@{path}") == [[0, 1], [0, 0]]
    with pytest.raises(InputError, match="no such file"):
        converter.load_json(f"@{tmp_path / 'missing.json'}")


def test_algebra_codec_keeps_structure_constants(complex_algebra):
    back = converter.algebra_from_json(json.loads(json.dumps(converter.algebra_to_json(complex_algebra))))
    assert back.c == complex_algebra.c
    assert back.labels == complex_algebra.labels


def test_catalog_reference_inside_json():
    A = converter.algebra_from_json({"catalog": "quotient_poly(x^2-2)", "field": "t^2-2"})
    assert A.field.degree == 2


def test_measuring_codec_keeps_the_maps():
    D = dual_numbers()
    m = measuring_from_maps(derivation_pair(), D, D, [[[1, 0], [0, 1]], [[0, 0], [0, 1]]])
    back = converter.measuring_from_json(converter.measuring_to_json(m))
    assert back.rho == m.rho


def test_extension_shape_is_checked():
    doc = {"A": {"catalog": "quotient_poly(x^2+1)"}, "S": {"catalog": "base_field"}, "sigma": [[["1", "0"]]]}
    with pytest.raises(InputError, match="2x1x2"):
        converter.extension_from_json(doc)


def test_complex_codec():
    C = converter.complex_from_json({"dims": [1, 1], "d": [[[1]]]})
    assert C.dims == (1, 1)
    assert converter.complex_to_json(C) == {"dims": [1, 1], "d": [[["1"]]]}
    with pytest.raises(InputError, match="dims"):
        converter.complex_from_json({"dims": [1, -1]})


# ── shipped templates ────────────────────────────────────────────────────


def template(name: str) -> str:
    return str(config.TEMPLATES_DIR / name)


def test_templates_load():
    assert verify_extension(converter.extension_from_json(converter.load_json(template("conjugation_extension.json")))).ok
    assert verify_measuring(converter.measuring_from_json(converter.load_json(template("derivation_measuring.json")))).ok
    assert converter.load_algebra(template("group_algebra_z2.json")).labels == ("1", "g")
    assert converter.complex_from_json(converter.load_json(template("three_term_complex.json"))).dims == (1, 2, 1)
    assert converter.matrix_from_json(converter.load_json(template("loop_Z.json")), what="Z")[0][1] == 1
