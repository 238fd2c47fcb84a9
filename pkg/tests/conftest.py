"""Shared fixtures: catalog algebras and presentations completed at small bounds."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

# Ensure the project root is on sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app import config  # noqa: E402
from app.algebra.exactnum import number_field  # noqa: E402
from app.algebra.finalg import conjugation_algebra, dual_numbers, quotient_poly  # noqa: E402
from app.algebra.sweedler import build_F, dual_number_presentation  # noqa: E402

SMALL_BOUND = 6
CONJUGATION_BOUND = 5


@pytest.fixture(scope="session")
def complex_algebra():
    """ℂ as the real form Q[x]/(x²+1)."""
    return quotient_poly([1, 0, 1])


@pytest.fixture(scope="session")
def dual():
    return dual_numbers()


@pytest.fixture(scope="session")
def gaussian():
    """Q(i) = Q[t]/(t²+1)."""
    return number_field([1, 0, 1])


@pytest.fixture(scope="session")
def F_complex(complex_algebra):
    return build_F(complex_algebra, complex_algebra, SMALL_BOUND)


@pytest.fixture(scope="session")
def F_dual():
    return dual_number_presentation(SMALL_BOUND)


@pytest.fixture(scope="session")
def conjugation_alg():
    """The algebra on 1, x, J, xJ with x² = −1, J² = 1 and Jx = −xJ."""
    return conjugation_algebra()


@pytest.fixture(scope="session")
def F_conj(conjugation_alg):
    return build_F(conjugation_alg, conjugation_alg, CONJUGATION_BOUND)


@pytest.fixture
def runs_dir(tmp_path, monkeypatch):
    """Point run folders at a temporary directory."""
    target = tmp_path / "runs"
    monkeypatch.setattr(config, "RUNS_DIR", target)
    return target
