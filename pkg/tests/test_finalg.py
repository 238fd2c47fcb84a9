from __future__ import annotations

import pytest

from app.algebra.errors import InputError, StructureError
from app.algebra.exactnum import is_zero_matrix
from app.algebra.finalg import (
    base_field,
    build_algebra,
    conjugation_algebra,
    dual_numbers,
    matrix_algebra,
    matrix_units,
    poly_at_matrix,
    quotient_poly,
    raw_algebra,
    regular_representation,
    validate_algebra,
)

CATALOG_SAMPLES = [
    ("quotient_poly", {"p": [1, 0, 1]}),
    ("quotient_poly", {"p": [-2, 0, 0, 1]}),
    ("dual_numbers", {}),
    ("base_field", {}),
    ("matrix_algebra", {"n": 2}),
    ("matrix_units", {"n": 2}),
    ("conjugation_algebra", {}),
]


@pytest.mark.parametrize("name,params", CATALOG_SAMPLES)
def test_catalog_entries_satisfy_the_axioms(name, params):
    A = build_algebra(name, **params)
    report = validate_algebra(A)
    assert report.ok, report.violations
    assert report.checked >= A.dim ** 4


@pytest.mark.parametrize("name,params", CATALOG_SAMPLES)
def test_regular_representation_is_a_homomorphism(name, params):
    A = build_algebra(name, **params)
    assert regular_representation(A).check_homomorphism().ok


def test_quotient_poly_multiplication(complex_algebra):
    x = complex_algebra.basis(1)
    assert complex_algebra.mul(x, x) == complex_algebra.scale(-1, complex_algebra.unit)
    assert complex_algebra.labels == ("1", "x")
    assert complex_algebra.weights == (0, 1)


def test_quotient_poly_needs_monic_polynomial():
    with pytest.raises(InputError, match="monic"):
        quotient_poly([1, 0, 2])
    with pytest.raises(InputError):
        quotient_poly([5])


def test_dual_numbers_square_to_zero():
    D = dual_numbers()
    d = D.basis(1)
    assert D.mul(d, d) == D.zero_vector()
    assert D.labels == ("1", "d")


def test_companion_matrix_satisfies_its_polynomial():
    p = [-2, 0, 0, 1]
    A = quotient_poly(p)
    companion = regular_representation(A).matrices[1]
    assert is_zero_matrix(poly_at_matrix(p, companion))


def test_matrix_algebra_unit_is_first():
    assert matrix_algebra(2).unit_first
    assert not matrix_units(2).unit_first


def test_conjugation_algebra_anticommutes():
    C = conjugation_algebra()
    x, J = C.basis(1), C.basis(2)
    assert C.mul(J, x) == C.scale(-1, C.mul(x, J))
    assert C.mul(J, J) == C.unit


def test_raw_algebra_reports_first_failure():
    zero = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    with pytest.raises(StructureError, match="unit"):
        raw_algebra(zero, [1, 0])


def test_raw_algebra_accepts_valid_constants():
    c = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    A = raw_algebra(c, [1, 0], labels=["1", "g"])
    assert A.unit_first
    assert A.weights == (0, 1)


def test_unknown_algebra():
    with pytest.raises(InputError, match="unknown algebra"):
        build_algebra("octonions")


def test_base_field_is_one_dimensional():
    k = base_field()
    assert k.dim == 1
    assert validate_algebra(k).ok
