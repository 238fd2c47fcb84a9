from __future__ import annotations

import random

import pytest

from app.algebra.coalg import ExtensionMap, verify_measuring
from app.algebra.errors import InputError, StructureError
from app.algebra.exactnum import QQ, CentralPoly, nullspace, number_field, transpose
from app.algebra.finalg import (
    base_field,
    conjugation_algebra,
    dual_numbers,
    matrix_algebra,
    matrix_units,
    quotient_poly,
    regular_representation,
)
from app.algebra.freealg import nc_add_into, nc_const, nc_gen, nc_mul
from app.algebra.sweedler import (
    ChainComplex,
    MatrixTarget,
    bialgebra_check,
    build_F,
    chain_to_comodule,
    coassociativity_check,
    comultiplication,
    complex_family,
    conjugation_check,
    conjugation_identities,
    F_of_extension,
    lambda_family,
    map_presentation,
    pareigis_check,
    qcalc_presentation,
    quoted_relation_warning,
    representation_to_measuring,
    verify_qcalc_equivalence,
)

# ── F(ℂ,ℂ) ───────────────────────────────────────────────────────────────


def test_complex_presentation_rules(F_complex):
    assert F_complex.labels == ("f0", "f1")
    assert set(F_complex.system.rule_strings()) == {"f0.f0 -> f1.f1 - 1", "f0.f1 -> -f1.f0"}
    assert F_complex.report.ok


def test_complex_presentation_grows_by_two(F_complex):
    assert F_complex.dimension_sequence(6) == [1, 2, 2, 2, 2, 2, 2]


def test_complex_presentation_is_a_bialgebra(F_complex):
    report = bialgebra_check(F_complex)
    assert report.ok, report.violations
    assert F_complex.epsilon == (0, 1)


def test_to_dict_shows_the_universal_extension(F_complex):
    data = F_complex.to_dict()
    assert data["eta"]["x"] == "f0⊗1 + f1⊗x"
    assert set(data["delta"]) == {"f0", "f1"}


def test_mismatched_fields_are_refused(complex_algebra):
    other = quotient_poly([1, 0, 1], field_=number_field([-2, 0, 1]))
    with pytest.raises(InputError, match="shared field"):
        build_F(complex_algebra, other, 3)


def test_unit_must_come_first():
    with pytest.raises(StructureError, match="unit"):
        build_F(matrix_units(2), base_field(), 2)


def test_comultiplication_through_the_same_algebra(F_complex, complex_algebra):
    delta = comultiplication(F_complex, complex_algebra, F_complex, F_complex)
    assert delta.report.ok, delta.report.violations
    assert set(delta.to_dict()["images"]) == {"f0", "f1"}


def test_comultiplication_checks_coassociativity_through_a_second_algebra(F_complex, complex_algebra):
    delta = comultiplication(F_complex, complex_algebra, F_complex, F_complex, second=complex_algebra)
    assert delta.report.ok, delta.report.violations
    assert delta.report.checked > len(F_complex.labels)


def test_coassociativity_through_the_conjugation_algebra(complex_algebra, conjugation_alg):
    FAC = build_F(complex_algebra, complex_algebra, 5)
    delta = comultiplication(FAC, conjugation_alg, second=conjugation_alg)
    assert delta.report.ok, delta.report.violations
    report = coassociativity_check(FAC, conjugation_alg, complex_algebra)
    assert report.name == "coassociativity through conjugation_algebra and quotient_poly(x^2 + 1)"
    assert report.ok, report.violations


# ── F(σ) ─────────────────────────────────────────────────────────────────


def test_F_of_conjugation(F_complex, complex_algebra):
    k = base_field()
    sigma = tuple((tuple(k.field(v) for v in row),) for row in ((1, 0), (0, -1)))
    image = F_of_extension(F_complex, sigma=ExtensionMap(complex_algebra, k, complex_algebra, sigma))
    assert image.report.ok, image.report.violations
    assert image.to_dict()["images"] == {"f0": "0", "f1": "-1"}


def test_F_of_regular_representation(F_complex, complex_algebra):
    image = F_of_extension(F_complex, representation=regular_representation(complex_algebra).matrices)
    assert image.report.ok


def test_F_of_extension_needs_exactly_one_input(F_complex):
    with pytest.raises(InputError):
        F_of_extension(F_complex)


def test_map_presentation_locates_failing_relation(F_complex):
    q = F_complex.field
    bad = {"f0": [[q(0), q(1)], [q(0), q(0)]], "f1": [[q(0), q(0)], [q(0), q(0)]]}
    image = map_presentation(F_complex, MatrixTarget(2), bad)
    assert not image.report.ok
    assert image.report.first().check == "relation"


def test_missing_generator_image(F_complex):
    with pytest.raises(InputError, match="no image"):
        map_presentation(F_complex, MatrixTarget(2), {"f0": [[1]]})


# ── representations ──────────────────────────────────────────────────────


@pytest.mark.parametrize("b", [0, 1, 2, -3])
def test_complex_family_gives_measurings(F_complex, b):
    measuring, report = representation_to_measuring(F_complex, complex_family(b))
    assert report.ok, report.violations
    assert measuring is not None
    assert verify_measuring(measuring).ok


def test_lambda_family_on_the_curve(F_complex):
    lam = CentralPoly.lam()
    one = CentralPoly.const(1)
    good = map_presentation(F_complex, MatrixTarget(2, one), lambda_family(lam, one, lam * lam - 1))
    assert good.report.ok
    bad = map_presentation(F_complex, MatrixTarget(2, one), lambda_family(lam, one, lam * lam))
    assert not bad.report.ok


# ── dual presentation of Q[x]/p ──────────────────────────────────────────


def test_qcalc_presentation_of_complex_numbers():
    Q = qcalc_presentation([1, 0, 1], bound=5)
    assert Q.labels == ("a0", "a1")
    assert Q.system.dimension_sequence(5) == [1, 2, 2, 2, 2, 2]


@pytest.mark.parametrize("p", [[1, 0, 1], [0, 0, 1], [-2, 0, 1], [-2, 0, 0, 1]])
def test_qcalc_agrees_with_the_matrix_method(p):
    report = verify_qcalc_equivalence(p, bound=5)
    assert report.ok, report.violations
    assert report.notes["dual presentation sequence"] == report.notes["matrix method sequence"]


# ── dual numbers ─────────────────────────────────────────────────────────


def test_dual_number_presentation(F_dual):
    assert F_dual.labels == ("g0", "g1")
    assert set(F_dual.system.rule_strings()) == {"g0.g0 -> 0", "g0.g1 -> -g1.g0"}
    assert F_dual.dimension_sequence(5) == [1, 2, 2, 2, 2, 2]


def test_quoted_relations_are_flagged(F_dual):
    warning = quoted_relation_warning(F_dual)
    assert warning is not None
    assert "anticommutator" in warning


def test_quoted_relation_warning_uses_the_presentation_labels(dual):
    F = build_F(dual, dual, 4)
    warning = quoted_relation_warning(F)
    assert "f0f1 = f1f0 = 0 = f0^2" in warning
    assert "f0^2 = 0 and f0f1 + f1f0 = 0" in warning
    assert "g0" not in warning
    assert "g0g1 = g1g0" in quoted_relation_warning(build_F(dual, dual, 4, prefix="g"))


def test_pareigis_comparison():
    report = pareigis_check(bound=6)
    assert report.ok, report.violations
    assert report.notes["F sequence"] == report.notes["H⁻ sequence"]
    assert report.warnings


# ── chain complexes ──────────────────────────────────────────────────────


def two_term() -> ChainComplex:
    return ChainComplex((1, 1), ([[1]],))


def test_chain_complex_becomes_a_comodule(F_dual):
    comodule = chain_to_comodule(two_term(), F_dual, -1)
    assert comodule.check().ok
    assert comodule.to_dict()["exponent"] == "i-1"


def test_exponent_i_plus_one_breaks_coassociativity(F_dual):
    assert not chain_to_comodule(two_term(), F_dual, +1).check().ok


def test_longer_complex(F_dual):
    C = ChainComplex((1, 2, 1), ([[1, -1]], [[1], [1]]))
    assert chain_to_comodule(C, F_dual, -1).check().ok


def test_d_squared_must_vanish(F_dual):
    C = ChainComplex((1, 1, 1), ([[1]], [[1]]))
    with pytest.raises(StructureError, match="d∘d"):
        chain_to_comodule(C, F_dual)


def test_dual_numbers_fixture_is_catalog_entry(F_dual):
    assert F_dual.A == dual_numbers()


def random_complex(rng: random.Random) -> ChainComplex:
    """d_top random, then each lower d_i built from rows killing d_(i+1)."""
    top = rng.randint(1, 3)
    dims = tuple(rng.randint(1, 4) for _ in range(top + 1))
    d = [[[QQ(rng.randint(-2, 2)) for _ in range(dims[top])] for _ in range(dims[top - 1])]]
    for i in range(top - 1, 0, -1):
        kernel = nullspace(transpose(d[0]))
        rows = []
        for _ in range(dims[i - 1]):
            row = [QQ.zero] * dims[i]
            for v in kernel:
                c = rng.randint(-2, 2)
                row = [a + c * b for a, b in zip(row, v)]
            rows.append(row)
        d.insert(0, rows)
    return ChainComplex(dims, tuple(d))


@pytest.mark.parametrize("seed", range(20))
def test_random_complexes_become_comodules(F_dual, seed):
    C = random_complex(random.Random(seed))
    assert chain_to_comodule(C, F_dual, -1).check().ok


# ── F(A,A) for the conjugation algebra ───────────────────────────────────


def eta_product(F, i, j):
    """Coordinates of η(a_i)η(a_j) along the B-basis, built from the generators f_ir."""
    coords = [{} for _ in range(F.B.dim)]
    for r in range(F.B.dim):
        for s in range(F.B.dim):
            prod = nc_mul(nc_gen(F.gen_of(i, r), F.field), nc_gen(F.gen_of(j, s), F.field))
            for t, c in enumerate(F.B.c[r][s]):
                if c:
                    nc_add_into(coords[t], prod, c)
    return coords


def test_conjugation_presentation_is_a_bialgebra(F_conj):
    assert F_conj.report.ok, F_conj.report.violations
    report = bialgebra_check(F_conj)
    assert report.ok, report.violations


@pytest.mark.parametrize("pairs,unit_value", [
    ([(1, 1)], -1),
    ([(2, 2)], 1),
    ([(1, 2), (2, 1)], 0),
])
def test_eta_respects_the_conjugation_relations(F_conj, pairs, unit_value):
    total = [{} for _ in range(F_conj.B.dim)]
    for i, j in pairs:
        for t, coord in enumerate(eta_product(F_conj, i, j)):
            nc_add_into(total[t], coord)
    nc_add_into(total[0], nc_const(unit_value, F_conj.field), -1)
    for coord in total:
        assert F_conj.normal_form(coord, strict=False) == {}


def test_conjugation_identities_reduce_to_zero(F_conj):
    identities = conjugation_identities(F_conj)
    assert len(identities) == 12
    for name, rel in identities.items():
        assert F_conj.normal_form(rel, strict=False) == {}, name
    report = conjugation_check(F_conj)
    assert report.ok, report.violations
    assert report.checked == 12


def test_conjugation_identities_need_the_conjugation_basis(F_complex):
    with pytest.raises(InputError, match="1, x, J, xJ"):
        conjugation_identities(F_complex)


# ── degenerate arguments ─────────────────────────────────────────────────

CATALOG = {
    "quotient_poly(x^2+1)": lambda: quotient_poly([1, 0, 1]),
    "quotient_poly(x^2)": lambda: quotient_poly([0, 0, 1]),
    "dual_numbers": dual_numbers,
    "conjugation_algebra": conjugation_algebra,
    "matrix_algebra(2)": lambda: matrix_algebra(2),
    "base_field": base_field,
}
DEGENERATE_DMAX = 4


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_F_into_the_base_field_has_the_dimension_of_A(name):
    A = CATALOG[name]()
    seq = build_F(A, base_field(), DEGENERATE_DMAX).dimension_sequence(DEGENERATE_DMAX)
    assert sum(seq) == A.dim


@pytest.mark.parametrize("name,expected", [
    ("quotient_poly(x^2+1)", [1, 1, 0, 0, 0]),
    ("conjugation_algebra", [1, 2, 1, 0, 0]),
    ("matrix_algebra(2)", [1, 3, 0, 0, 0]),
])
def test_F_into_the_base_field_sequences(name, expected):
    A = CATALOG[name]()
    assert build_F(A, base_field(), DEGENERATE_DMAX).dimension_sequence(DEGENERATE_DMAX) == expected


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_F_out_of_the_base_field_is_the_base_field(name):
    F = build_F(base_field(), CATALOG[name](), DEGENERATE_DMAX)
    assert F.labels == ()
    assert F.dimension_sequence(DEGENERATE_DMAX) == [1, 0, 0, 0, 0]
