from fractions import Fraction

import numpy as np
import pytest

from joinery.averages.vdc import (
    RELATIVE_SLACK,
    correlation_profile,
    exact_vdc_quantities,
    vdc_quantities,
)
from joinery.core.corpus import cyclic_system
from joinery.core.observable import Observable, constant, indicator
from joinery.core.system import FiniteSystem
from joinery.exact import ExactComplex
from joinery.exceptions import ParameterError, PeriodCapError, SequenceLengthError

F = Fraction

TRIALS = 1000
MAX_LENGTH = 256
MAX_WINDOW = 16
MAX_DIMENSION = 8


def test_random_sequences_respect_the_bound(rng: np.random.Generator) -> None:
    for _ in range(TRIALS):
        n = int(rng.integers(1, MAX_LENGTH + 1))
        h = int(rng.integers(1, MAX_WINDOW + 1))
        dim = int(rng.integers(1, MAX_DIMENSION + 1))
        us = rng.normal(size=(n + h, dim)) + 1j * rng.normal(size=(n + h, dim))
        weights = rng.uniform(0.1, 1.0, size=dim) if rng.random() < 0.5 else None  # noqa: PLR2004

        result = vdc_quantities(us, n, h, weights)

        assert result.lhs**2 <= result.rhs_bound * (1 + RELATIVE_SLACK)
        assert result.bound >= result.lhs


def test_largest_window_respects_the_bound(rng: np.random.Generator) -> None:
    size = (MAX_LENGTH + MAX_WINDOW, MAX_DIMENSION)
    us = rng.uniform(-1, 1, size=size) + 1j * rng.uniform(-1, 1, size=size)

    result = vdc_quantities(us, MAX_LENGTH, MAX_WINDOW)

    assert result.lhs**2 <= result.rhs_bound * (1 + RELATIVE_SLACK)


def test_constant_sequence() -> None:
    result = vdc_quantities(np.ones((12, 1)), 10, 2)

    assert result.lhs == pytest.approx(1.0)
    assert result.corr == pytest.approx(1.0)
    assert result.bound == pytest.approx(1.0)
    assert result.rhs_bound == pytest.approx(2.0 + 8.0 * 4 / 100)


def test_alternating_sequence_has_small_average() -> None:
    us = np.array([(-1.0) ** j for j in range(102)]).reshape(-1, 1)

    result = vdc_quantities(us, 100, 2)

    assert result.lhs == pytest.approx(0.0)
    assert result.corr == pytest.approx(0.0)


def test_window_errors() -> None:
    with pytest.raises(SequenceLengthError):
        vdc_quantities(np.ones((5, 1)), 4, 2)
    with pytest.raises(ParameterError):
        vdc_quantities(np.ones((5, 1)), 0, 2)
    with pytest.raises(ParameterError):
        vdc_quantities(np.ones((5, 1)), 2, 0)


def test_exact_triple(z5_12: FiniteSystem, centred_delta: Observable, delta: Observable) -> None:
    result = exact_vdc_quantities(z5_12, [centred_delta, delta], 125, 5)

    assert result.lhs_sq == F(4, 625)
    assert result.bound_sq == F(16, 125)
    assert result.lhs_sq <= result.rhs_bound


def test_correlation_profile_vanishes_over_whole_periods() -> None:
    system = cyclic_system(5, (1, 0))
    f = indicator(system, [0]) - constant(system, F(1, 5))

    profile = correlation_profile(system, [f, constant(system, 1)], [1, 5, 10])

    assert profile == {1: ExactComplex(F(-1, 25)), 5: ExactComplex(), 10: ExactComplex()}

    with pytest.raises(PeriodCapError):
        correlation_profile(system, [f, constant(system, 1)], [1], period_cap=4)
    with pytest.raises(ParameterError):
        correlation_profile(system, [f, constant(system, 1)], [0])
