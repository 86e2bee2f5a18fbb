"""Shared builders for randomized test families.

Everything is seeded explicitly so failures reproduce.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from metriclie import linalg as la
from metriclie.core import LieAlgebra
from metriclie.reduction import (
    build_ab,
    iterated_double_extension,
    random_double_extension,
)


def rand_fraction(rng: random.Random, bound: int = 3, max_denominator: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_denominator))


def rand_matrix(rng: random.Random, n: int, bound: int = 3) -> la.Mat:
    return tuple(
        tuple(rand_fraction(rng, bound) for _ in range(n)) for _ in range(n)
    )


def random_abelian_base(rng: random.Random, max_dim: int = 6):
    n = rng.randint(1, max_dim)
    s = rng.randint(0, n)
    return build_ab(n, s)


def random_solvable_metric(rng: random.Random, max_base_dim: int = 5, max_steps: int = 2):
    """A random solvable metric Lie algebra built by extending an
    abelian base one or two times."""
    base = random_abelian_base(rng, max_base_dim)
    steps = rng.randint(1, max_steps)
    return iterated_double_extension(rng, base, steps)


def random_vector(rng: random.Random, n: int, bound: int = 3) -> la.Vec:
    v = tuple(rand_fraction(rng, bound) for _ in range(n))
    if la.is_zero_vec(v):
        return la.unit_vec(n, rng.randrange(n))
    return v


@pytest.fixture
def rng():
    return random.Random(20260823)
