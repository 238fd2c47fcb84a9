from __future__ import annotations

import random

import pytest

from app.algebra.errors import BoundExceededError
from app.algebra.exactnum import QQ
from app.algebra.freealg import complete, nc_gen, nc_mul, nc_sub
from app.algebra.freemodule import ModuleSystem, act, complete_module, generator

X, Y = nc_gen(0), nc_gen(1)
E = generator(0, QQ.one)


@pytest.fixture(scope="module")
def polynomials():
    return complete([nc_sub(nc_mul(X, Y), nc_mul(Y, X))], ["x", "y"], bound=4)


def test_act_prepends_words():
    assert act(nc_mul(X, Y), E) == {((0, 1), 0): QQ.one}


def test_free_module_matches_the_algebra(polynomials):
    free = ModuleSystem(polynomials, ["e"])
    assert free.dimension_sequence(4) == polynomials.dimension_sequence(4)


def test_killing_x_leaves_polynomials_in_y(polynomials):
    M = complete_module([act(X, E)], polynomials, ["e"])
    assert M.rule_strings() == ["x.e -> 0"]
    assert M.dimension_sequence(4) == [1, 1, 1, 1, 1]


def test_killing_y_needs_completion(polynomials):
    M = complete_module([act(Y, E)], polynomials, ["e"])
    # y.x.e comes from rewriting x.y.e two ways
    assert "y.x.e -> 0" in M.rule_strings()
    assert M.dimension_sequence(4) == [1, 1, 1, 1, 1]
    assert M.normal_form(act(nc_mul(X, Y), E)) == {}
    assert M.normal_form(act(nc_mul(X, X), E)) == {((0, 0), 0): QQ.one}


@pytest.mark.parametrize("seed", [3, 11])
def test_module_completion_is_schedule_independent(polynomials, seed):
    sorted_run = complete_module([act(Y, E)], polynomials, ["e"])
    shuffled = complete_module([act(Y, E)], polynomials, ["e"], schedule=random.Random(seed))
    assert set(shuffled.rule_strings()) == set(sorted_run.rule_strings())


def test_generators_are_ordered_position_first(polynomials):
    M = ModuleSystem(polynomials, ["e", "f"])
    e, f = generator(0, QQ.one), generator(1, QQ.one)
    v = {**act(nc_mul(X, X), e), **f}
    assert M.leading(v) == ((), 1)
    assert M.format(v) == "f + x.x.e"


def test_module_bound_is_enforced(polynomials):
    M = ModuleSystem(polynomials, ["e"], bound=2)
    with pytest.raises(BoundExceededError):
        M.normal_form(act(nc_mul(nc_mul(X, X), X), E))
    with pytest.raises(BoundExceededError):
        complete_module([act(nc_mul(nc_mul(X, X), X), E)], polynomials, ["e"], bound=2)
