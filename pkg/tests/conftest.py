from collections.abc import Callable, Iterator
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from joinery.config import Settings
from joinery.core.corpus import cyclic_system, torus_grid_system
from joinery.core.observable import Observable, constant
from joinery.core.system import FiniteSystem, Permutation, require_valid
from joinery.log import reset_logging as reset_handlers

RESOURCES = Path(__file__).parent.parent / 'resources' / 'systems'


@pytest.fixture
def resources() -> Path:
    return RESOURCES


@pytest.fixture
def rng() -> np.random.Generator:
    seed = Settings.from_env().seed
    return np.random.default_rng(0 if seed is None else seed)


@pytest.fixture
def random_system(rng: np.random.Generator) -> Callable[[int], FiniteSystem]:
    """Two commuting powers of a random permutation, weights constant on its cycles."""

    def build(n: int) -> FiniteSystem:
        base = Permutation(int(image) for image in rng.permutation(n))
        weights = [Fraction(0)] * n
        for cycle in base.cycles:
            mass = int(rng.integers(1, 5))
            for point in cycle:
                weights[point] = Fraction(mass)
        total = sum(weights)
        exponents = rng.integers(0, n, size=2)
        maps = [base.power(int(exponent)) for exponent in exponents]
        return require_valid(FiniteSystem([weight / total for weight in weights], maps))

    return build


@pytest.fixture
def z5_rotation() -> FiniteSystem:
    return cyclic_system(5, (1,))


@pytest.fixture
def z5_12() -> FiniteSystem:
    """``Z_5`` with ``x + 1`` and ``x + 2``: not a C-system."""
    return cyclic_system(5, (1, 2))


@pytest.fixture
def grid_c() -> FiniteSystem:
    """``Z_5 x Z_5`` with ``(+1, +2)`` and ``(+2, +2)``: a C-system over ``z5_12``."""
    return torus_grid_system(5, ((1, 2), (2, 2)))


@pytest.fixture
def centred_delta(z5_12: FiniteSystem) -> Observable:
    return Observable.exact(z5_12, [1, 0, 0, 0, 0]) - constant(z5_12, Fraction(1, 5))


@pytest.fixture
def delta(z5_12: FiniteSystem) -> Observable:
    return Observable.exact(z5_12, [1, 0, 0, 0, 0])


@pytest.fixture
def reset_logging() -> Iterator[None]:
    yield
    reset_handlers()
