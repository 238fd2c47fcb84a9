from __future__ import annotations

import pytest

from app.algebra.errors import InputError, StructureError
from app.algebra.exactnum import QQ
from app.algebra.extensions import (
    galois_check,
    loop_data,
    loop_extension,
    monoid_check,
    root_function_images,
    root_function_matrix,
    vandermonde_data,
    vandermonde_extension,
)


@pytest.fixture
def gaussian_roots(gaussian):
    """x² + 1 over Q(i) with roots t and −t."""
    t = gaussian.gen
    return vandermonde_data([1, 0, 1], gaussian, [t, -t])


@pytest.fixture
def rational_roots():
    """(x − 1)(x − 2) over Q."""
    return vandermonde_data([2, -3, 1], QQ, [1, 2])


# ── root functions ───────────────────────────────────────────────────────


def test_identity_root_function_is_the_identity(gaussian_roots):
    W = root_function_matrix(gaussian_roots, (0, 1))
    assert W == [[1, 0], [0, 1]]


def test_swap_is_complex_conjugation(gaussian_roots):
    rf = vandermonde_extension(gaussian_roots, (1, 0))
    assert rf.w == [0, -1]
    assert rf.to_dict()["sigma"] == [2, 1]


def test_root_function_induces_a_map_on_F(F_complex, gaussian_roots):
    rf = vandermonde_extension(gaussian_roots, (1, 0))
    image = root_function_images(F_complex, rf)
    assert image.report.ok, image.report.violations


@pytest.mark.parametrize("roots,match", [
    (["t", "t"], "distinct"),
    (["1", "t"], "not a root"),
    (["t"], "degree"),
])
def test_bad_roots_are_rejected(gaussian, roots, match):
    values = [gaussian.gen if r == "t" else gaussian(1) for r in roots]
    with pytest.raises(InputError, match=match):
        vandermonde_data([1, 0, 1], gaussian, values)


def test_sigma_must_index_roots(gaussian_roots):
    with pytest.raises(InputError):
        vandermonde_extension(gaussian_roots, (0, 5))


# ── monoid and Galois ────────────────────────────────────────────────────


@pytest.mark.parametrize("fixture", ["gaussian_roots", "rational_roots"])
def test_root_functions_compose(request, fixture):
    report = monoid_check(request.getfixturevalue(fixture))
    assert report.ok, report.violations
    assert report.notes["pairs"] == 16
    assert report.notes["composition law"] != ["none"]


@pytest.mark.parametrize("sigma", [(0, 1), (1, 0)])
def test_permutations_of_conjugate_roots_are_galois(gaussian_roots, sigma):
    report = galois_check(gaussian_roots, sigma)
    assert report.ok
    assert report.notes["galois"] == "corresponds to a Galois transformation"


def test_constant_root_function_is_not_galois(gaussian_roots):
    report = galois_check(gaussian_roots, (0, 0))
    assert not report.ok
    assert report.notes["galois"] == "not a Galois transformation"


def test_rational_roots_only_allow_the_identity(rational_roots):
    assert galois_check(rational_roots, (0, 1)).ok
    assert not galois_check(rational_roots, (1, 0)).ok


# ── loop representations ─────────────────────────────────────────────────


def test_loop_extension_satisfies_p(F_complex):
    le = loop_extension(loop_data([1, 0, 1], [[0, 1], [0, 0]]), F_complex)
    assert le.report.ok, le.report.violations
    assert le.images is not None
    assert le.to_dict()["series_length"] >= 2


def test_loop_at_zero_is_the_companion_matrix():
    le = loop_extension(loop_data([1, 0, 1], [[0, 1], [0, 0]]))
    at_zero = le.specialize(0)
    assert at_zero[0] == [[0, -1], [1, 0]]
    assert at_zero[1] == [[0, 0], [0, 0]]


def test_loop_needs_nilpotent_Z():
    with pytest.raises(StructureError, match="nilpotent"):
        loop_data([1, 0, 1], [[1, 0], [0, 0]])


def test_loop_Z_size_matches_degree():
    with pytest.raises(InputError, match="2x2"):
        loop_data([1, 0, 1], [[0]])
