from __future__ import annotations

import random
from fractions import Fraction

import pytest
from sympy import QQ as SYMPY_QQ
from sympy.polys.agca.extensions import FiniteExtension

from app.algebra.errors import FieldError, SingularMatrixError
from app.algebra.exactnum import (
    QQ,
    CentralPoly,
    identity,
    mat_inv,
    mat_mul,
    nullspace,
    number_field,
    poly_divmod,
    poly_str,
)


# ── rational polynomials ─────────────────────────────────────────────────


def test_poly_str_orders_highest_power_first():
    assert poly_str((Fraction(1), Fraction(0), Fraction(1))) == "x^2 + 1"
    assert poly_str((Fraction(-2), Fraction(0), Fraction(1))) == "x^2 - 2"
    assert poly_str((Fraction(0), Fraction(-3, 2)), "t") == "-3/2*t"
    assert poly_str(()) == "0"


def test_poly_divmod_remainder():
    q, r = poly_divmod((Fraction(0), Fraction(0), Fraction(0), Fraction(1)), (Fraction(1), Fraction(0), Fraction(1)))
    assert q == (Fraction(0), Fraction(1))
    assert r == (Fraction(0), Fraction(-1))


# ── fields and scalars ───────────────────────────────────────────────────


def test_rationals_are_exact():
    a = QQ(Fraction(1, 3))
    assert a + a + a == 1
    assert (a * 3).as_fraction() == 1
    assert QQ(2) / QQ(4) == Fraction(1, 2)


def test_gaussian_arithmetic(gaussian):
    t = gaussian.gen
    assert t * t == gaussian(-1)
    inv = (1 + t).inverse()
    assert inv * (1 + t) == gaussian.one
    assert inv == gaussian.from_coords([Fraction(1, 2), Fraction(-1, 2)])
    assert t ** 4 == 1


def test_number_field_rejects_reducible_modulus():
    with pytest.raises(FieldError, match="reducible"):
        number_field([-1, 0, 1])


def test_number_field_rejects_non_monic():
    with pytest.raises(FieldError, match="monic"):
        number_field([1, 0, 2])


def test_mixed_fields_raise(gaussian):
    sqrt2 = number_field([-2, 0, 1])
    with pytest.raises(FieldError):
        _ = gaussian.gen + sqrt2.gen


def test_rationals_lift_into_number_fields(gaussian):
    assert QQ(3) * gaussian.gen == gaussian.from_coords([0, 3])
    assert gaussian(QQ(5)) == 5


def test_division_by_zero():
    with pytest.raises(FieldError, match="division by zero"):
        QQ.zero.inverse()


def test_scalars_wrap_sympy_domain_elements(gaussian):
    assert QQ.domain == SYMPY_QQ
    assert isinstance(gaussian.domain, FiniteExtension)
    assert (gaussian.gen * gaussian.gen).rep == -gaussian.domain.one
    assert gaussian.from_coords([1, 2]).coeffs == (Fraction(1), Fraction(2))


def test_zero_divisor_of_a_reducible_modulus():
    split = number_field([-1, 0, 1], assume_irreducible=True)
    with pytest.raises(FieldError, match="not invertible"):
        (split.gen + 1).inverse()


def sample(rng: random.Random, field_):
    return field_.from_coords([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(field_.degree)])


@pytest.mark.parametrize("modulus", [None, [1, 0, 1], [-2, 0, 0, 1]])
@pytest.mark.parametrize("seed", range(10))
def test_field_axioms_on_random_elements(modulus, seed):
    field_ = QQ if modulus is None else number_field(modulus)
    rng = random.Random(seed)
    a, b, c = (sample(rng, field_) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == field_.zero
    assert a * field_.one == a
    if a:
        assert a * a.inverse() == field_.one
        assert (b / a) * a == b


# ── central polynomials ──────────────────────────────────────────────────


def test_central_poly_arithmetic_and_evaluation():
    lam = CentralPoly.lam()
    p = lam * lam - 1
    assert p.degree == 2
    assert p.evaluate(3) == 8
    assert (lam ** 3 / 2).evaluate(2) == 4
    assert str(p) == "L^2 - 1"
    assert lam - lam == 0


# ── matrices ─────────────────────────────────────────────────────────────


def test_mat_inv_round_trip():
    m = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
    assert mat_mul(m, mat_inv(m)) == identity(2)


def test_mat_inv_names_the_stage():
    with pytest.raises(SingularMatrixError) as info:
        mat_inv([[QQ(1), QQ(2)], [QQ(2), QQ(4)]])
    assert info.value.stage == 1
    assert info.value.size == 2


def test_nullspace_of_rank_one_matrix():
    basis = nullspace([[1, 2], [2, 4]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + 2 * v[1] == 0
