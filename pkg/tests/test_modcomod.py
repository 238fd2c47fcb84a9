from __future__ import annotations

from dataclasses import replace

import pytest

from app.algebra.coalg import ExtensionMap
from app.algebra.errors import InputError, StructureError
from app.algebra.finalg import base_field
from app.algebra.modcomod import (
    D_of_extension,
    D_of_module_map,
    build_D,
    direct_sum,
    dual_comodule,
    extension_module_map,
    module,
    module_extension_measuring,
    regular_module,
    tau_map,
    trivial_module,
)
from app.algebra.sweedler import build_F

DMAX = 4


@pytest.fixture(scope="module")
def D_regular(F_complex, complex_algebra):
    R = regular_module(complex_algebra)
    return build_D(R, R, F_complex, DMAX)


@pytest.fixture
def conjugation(complex_algebra):
    k = base_field()
    sigma = tuple((tuple(k.field(v) for v in row),) for row in ((1, 0), (0, -1)))
    return ExtensionMap(complex_algebra, k, complex_algebra, sigma)


# ── modules and comodules ────────────────────────────────────────────────


def test_regular_and_trivial_modules(dual):
    assert regular_module(dual).validate().ok
    assert trivial_module(dual, 2).dim == 2


def test_complex_numbers_have_no_trivial_module(complex_algebra):
    with pytest.raises(StructureError):
        trivial_module(complex_algebra, 1)


def test_module_needs_one_matrix_per_basis_element(dual):
    with pytest.raises(InputError, match="need 2"):
        module(dual, [[[1]]])


def test_direct_sum_is_a_module(dual):
    S = direct_sum(regular_module(dual), trivial_module(dual, 1))
    assert S.dim == 3
    assert S.validate().ok


@pytest.mark.parametrize("which", ["regular", "trivial"])
def test_dual_comodule_satisfies_the_axioms(dual, which):
    N = regular_module(dual) if which == "regular" else trivial_module(dual, 2)
    assert dual_comodule(N).validate().ok


# ── D(M,N) ───────────────────────────────────────────────────────────────


def test_D_over_the_base_field_counts_generators():
    k = base_field()
    F = build_F(k, k, DMAX)
    D = build_D(trivial_module(k, 2), trivial_module(k, 3), F, DMAX)
    assert D.dimension_sequence(DMAX) == [6, 0, 0, 0, 0]
    assert D.labels[0] == "e0_0"


def test_D_of_regular_modules_is_free(D_regular, F_complex):
    assert D_regular.report.ok
    expected = [2 * n for n in F_complex.dimension_sequence(DMAX)]
    assert D_regular.dimension_sequence(DMAX) == expected


def test_D_is_additive_in_M(F_complex, complex_algebra, D_regular):
    R = regular_module(complex_algebra)
    D_sum = build_D(direct_sum(R, R), R, F_complex, DMAX)
    assert D_sum.dimension_sequence(DMAX) == [2 * n for n in D_regular.dimension_sequence(DMAX)]


def test_D_refuses_modules_over_other_algebras(F_complex, dual):
    R = regular_module(dual)
    with pytest.raises(InputError):
        build_D(R, R, F_complex, DMAX)


def test_tau_is_a_module_map(D_regular):
    tau = tau_map(D_regular)
    assert tau.report.ok, tau.report.violations
    assert tau.to_dict()["m0"] == "e0_0⊗n0 + e0_1⊗n1"


def test_identity_induces_a_map_on_D(D_regular):
    assert D_of_module_map(D_regular, D_regular, [[1, 0], [0, 1]]).ok


def test_non_linear_map_is_located(D_regular):
    report = D_of_module_map(D_regular, D_regular, [[1, 0], [0, 2]])
    assert not report.ok
    assert "φ is A-linear" in {v.check for v in report.violations}


# ── module extensions ────────────────────────────────────────────────────


def test_conjugation_gives_a_module_extension(conjugation):
    mx = extension_module_map(conjugation, trivial_module(base_field(), 1), [1])
    assert mx.check().ok


def test_D_of_conjugation(D_regular, conjugation):
    mx = extension_module_map(conjugation, trivial_module(base_field(), 1), [1])
    image = D_of_extension(D_regular, mx)
    assert image.report.ok, image.report.violations
    assert image.to_dict(D_regular.labels)["images"]["e1_1"] == ["-1"]


def test_dual_measuring_comodule(conjugation):
    mx = extension_module_map(conjugation, trivial_module(base_field(), 1), [1])
    gamma, measuring, X, report = module_extension_measuring(mx)
    assert report.ok, report.violations
    assert X.validate().ok
    assert len(gamma) == 1


def test_extension_module_map_checks_V(conjugation, dual):
    with pytest.raises(InputError, match="module over"):
        extension_module_map(conjugation, trivial_module(dual, 1), [1])


def test_D_of_extension_recovers_rho_through_tau(D_regular, conjugation):
    mx = extension_module_map(conjugation, trivial_module(base_field(), 1), [1])
    image = D_of_extension(D_regular, mx)
    tau = tau_map(D_regular)
    for p in range(D_regular.M.dim):
        pushed = {}
        for (g, v), c in tau.table[p].items():
            pushed[v] = pushed.get(v, 0) + c * image.images[g][0]
        assert [pushed[u] for u in range(D_regular.N.dim)] == list(mx.table[p][0])


def test_D_of_extension_flags_a_tampered_table(D_regular, conjugation):
    mx = extension_module_map(conjugation, trivial_module(base_field(), 1), [1])
    one, zero = mx.table[0][0][0], mx.table[0][0][1]
    tampered = replace(mx, table=(((one, zero),), ((zero, one),)))
    image = D_of_extension(D_regular, tampered)
    assert not image.report.ok
    assert "ρ(a·m) = σ(a)·ρ(m)" in {v.check for v in image.report.violations}


# ── additivity and free rank ─────────────────────────────────────────────


def test_D_is_additive_in_N(F_complex, complex_algebra, D_regular):
    R = regular_module(complex_algebra)
    D_sum = build_D(R, direct_sum(R, R), F_complex, DMAX)
    assert D_sum.report.ok
    assert D_sum.dimension_sequence(DMAX) == [2 * n for n in D_regular.dimension_sequence(DMAX)]
    assert D_sum.dimension_sequence(DMAX) == [4, 8, 8, 8, 8]


def test_D_of_regular_dual_numbers_has_free_rank_two(F_dual, dual):
    R = regular_module(dual)
    D = build_D(R, R, F_dual, DMAX)
    assert D.report.ok
    assert D.dimension_sequence(DMAX) == [2 * n for n in F_dual.dimension_sequence(DMAX)]
    assert D.dimension_sequence(DMAX) == [2, 4, 4, 4, 4]
