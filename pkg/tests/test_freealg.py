from __future__ import annotations

import random
from fractions import Fraction

import pytest

from app.algebra.errors import BoundExceededError, CompletionError, InputError
from app.algebra.exactnum import QQ
from app.algebra.freealg import (
    complete,
    contains_factor,
    free_system,
    nc_add_into,
    nc_gen,
    nc_mul,
    nc_sub,
    overlaps,
)
from app.algebra.sweedler import build_F

X, Y = nc_gen(0), nc_gen(1)


def commutator_system(bound: int = 5):
    return complete([nc_sub(nc_mul(X, Y), nc_mul(Y, X))], ["x", "y"], bound=bound)


def spawning_relations():
    # x.y = 0 and y.x = x force x.x = 0 through the overlap x.y.x
    return [nc_mul(X, Y), nc_sub(nc_mul(Y, X), X)]


# ── words and order ──────────────────────────────────────────────────────


def test_overlaps():
    assert overlaps((0, 1), (1, 0)) == [1]
    assert overlaps((0, 0, 0), (0, 0)) == [1]
    assert overlaps((0, 1), (0, 1)) == []


def test_generator_zero_is_the_greatest_letter():
    sysm = commutator_system()
    assert sysm.rule_strings() == ["x.y -> y.x"]


def test_weights_must_be_positive():
    with pytest.raises(InputError):
        free_system(["x"], weights=[0])


# ── completion ───────────────────────────────────────────────────────────


def test_commutative_polynomials_have_d_plus_one_monomials():
    assert commutator_system().dimension_sequence(5) == [1, 2, 3, 4, 5, 6]


def test_free_algebra_counts_weighted_words():
    sysm = free_system(["x", "y"], weights=[1, 2], bound=6)
    assert sysm.dimension_sequence(6) == [1, 1, 2, 3, 5, 8, 13]


def test_completion_adds_the_overlap_rule():
    sysm = complete(spawning_relations(), ["x", "y"], bound=4)
    assert set(sysm.rule_strings()) == {"x.x -> 0", "x.y -> 0", "y.x -> x"}
    assert sysm.dimension_sequence(4) == [1, 2, 1, 1, 1]


@pytest.mark.parametrize("seed", [0, 1, 7, 42])
def test_shuffled_schedule_reaches_the_same_rules(seed):
    sorted_run = complete(spawning_relations(), ["x", "y"], bound=4)
    shuffled = complete(spawning_relations(), ["x", "y"], bound=4, schedule=random.Random(seed))
    assert set(shuffled.rule_strings()) == set(sorted_run.rule_strings())


def test_inconsistent_relations_collapse():
    one = {(): QQ.one}
    sysm = complete([nc_sub(X, one), nc_sub(X, {(): QQ(2)})], ["x"], bound=3)
    assert sysm.collapsed
    assert sysm.dimension_sequence(3) == [0, 0, 0, 0]
    assert sysm.normal_form(nc_mul(X, X)) == {}


def test_rule_cap_stops_completion():
    with pytest.raises(CompletionError, match="rule cap 1"):
        complete(spawning_relations(), ["x", "y"], bound=4, rule_cap=1)


def test_relation_above_bound_is_refused():
    with pytest.raises(BoundExceededError):
        complete([nc_mul(nc_mul(X, X), X)], ["x"], bound=2)


# ── normal forms ─────────────────────────────────────────────────────────


def test_normal_form_sorts_commuting_letters():
    sysm = commutator_system()
    xyx = {(0, 1, 0): QQ.one}
    assert sysm.normal_form(xyx) == {(1, 0, 0): QQ.one}
    assert sysm.reduces_to_zero(nc_sub(nc_mul(X, Y), nc_mul(Y, X)))


def test_normal_form_refuses_degrees_past_the_certified_bound():
    sysm = free_system(["x", "y"], bound=3)
    with pytest.raises(BoundExceededError):
        sysm.normal_form({(0, 0, 0, 0): QQ.one})
    with pytest.raises(BoundExceededError):
        sysm.monomial_basis(4)
    assert sysm.normal_form({(0, 0, 0, 0): QQ.one}, strict=False) == {(0, 0, 0, 0): QQ.one}


def test_format_orders_terms_by_weight():
    sysm = free_system(["f0", "f1"])
    p = {(0, 1): QQ(Fraction(3, 2)), (1,): QQ(-1), (): QQ.one}
    assert sysm.format(p) == "3/2*f0.f1 - f1 + 1"
    assert sysm.format({}) == "0"


def test_to_dict_lists_rules():
    data = commutator_system(bound=4).to_dict()
    assert data["generators"] == ["x", "y"]
    assert data["bound"] == 4
    assert data["rules"] == ["x.y -> y.x"]


# ── engine properties on real presentations ──────────────────────────────

PRESENTATIONS = ["F_complex", "F_dual", "F_conj"]


def random_poly(rng: random.Random, sysm, max_weight: int = 4, terms: int = 6):
    p = {}
    for _ in range(terms):
        word: tuple[int, ...] = ()
        budget = rng.randint(0, max_weight)
        while True:
            longer = word + (rng.randrange(sysm.ngens),)
            if sysm.order.weight(longer) > budget:
                break
            word = longer
        nc_add_into(p, {word: QQ(rng.randint(-3, 3))})
    return p


@pytest.mark.parametrize("name", PRESENTATIONS)
@pytest.mark.parametrize("seed", range(5))
def test_normal_form_is_idempotent_and_linear(request, name, seed):
    sysm = request.getfixturevalue(name).system
    rng = random.Random(seed)
    p, q = random_poly(rng, sysm), random_poly(rng, sysm)
    a, b = QQ(rng.randint(-3, 3)), QQ(rng.randint(1, 3))
    nf_p, nf_q = sysm.normal_form(p), sysm.normal_form(q)
    assert sysm.normal_form(nf_p) == nf_p
    assert all(sysm.is_normal(w) for w in nf_p)
    combo, expected = {}, {}
    nc_add_into(combo, p, a)
    nc_add_into(combo, q, b)
    nc_add_into(expected, nf_p, a)
    nc_add_into(expected, nf_q, b)
    assert sysm.normal_form(combo) == expected


@pytest.mark.parametrize("name", PRESENTATIONS)
def test_every_overlap_of_the_final_rules_resolves(request, name):
    sysm = request.getfixturevalue(name).system
    rules = sysm.rules
    resolved = 0
    for a in rules:
        for b in rules:
            if a is not b:
                assert not contains_factor(a.lhs, b.lhs)
            for k in overlaps(a.lhs, b.lhs):
                if sysm.order.weight(a.lhs + b.lhs[k:]) > sysm.complete_up_to:
                    continue
                via_a = {w + b.lhs[k:]: c for w, c in a.rhs.items()}
                via_b = {a.lhs[:len(a.lhs) - k] + w: c for w, c in b.rhs.items()}
                assert sysm.normal_form(nc_sub(via_a, via_b)) == {}, (a.lhs, b.lhs, k)
                resolved += 1
    assert resolved > 0


@pytest.mark.parametrize("algebra,bound", [("complex_algebra", 6), ("dual", 6), ("conjugation_alg", 4)])
@pytest.mark.parametrize("seed", [0, 5])
def test_random_schedules_reach_the_same_presentation(request, algebra, bound, seed):
    A = request.getfixturevalue(algebra)
    sorted_run = build_F(A, A, bound)
    shuffled = build_F(A, A, bound, schedule=random.Random(seed))
    assert set(shuffled.system.rule_strings()) == set(sorted_run.system.rule_strings())
    assert shuffled.dimension_sequence(bound) == sorted_run.dimension_sequence(bound)
