"""Shared helpers: seeded random families with small rational coefficients."""

from __future__ import annotations

import random

import pytest

from rodfam import FamilySpec, make_family
from rodfam.rational import Q

SEED = 20260823


def random_rational(rng: random.Random, allow_zero: bool = True) -> Q:
    num = rng.randint(-9, 9)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-9, 9)
    return Q(num, rng.choice((1, 1, 1, 2, 3, 4)))


def random_poly_coeffs(rng: random.Random, degree: int) -> list:
    """Dense coefficients with an honest (nonzero) leading term."""
    coeffs = [random_rational(rng) for _ in range(degree)]
    coeffs.append(random_rational(rng, allow_zero=False))
    return coeffs


def random_family(rng: random.Random, max_degree: int = 5,
                  psi_one: bool = False) -> FamilySpec:
    """Symbolic-base family with polynomial data of bounded degree."""
    phi1 = random_poly_coeffs(rng, rng.randint(0, max_degree))
    phi2 = random_poly_coeffs(rng, rng.randint(1, max_degree))
    psi = [1] if psi_one else random_poly_coeffs(rng, rng.randint(0, max_degree))
    return make_family(phi1, phi2, psi)


@pytest.fixture(scope="session")
def families20():
    """The 20 random families shared by the genfun and recurrence criteria.

    Half have psi = 1 so the psi-restricted identity has a real subset.
    """
    rng = random.Random(SEED)
    print(f"\n[families20] seed = {SEED}")
    return [random_family(rng, max_degree=5, psi_one=(i % 2 == 0))
            for i in range(20)]
