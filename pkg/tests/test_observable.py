from collections.abc import Callable, Iterator
from fractions import Fraction

import numpy as np
import pytest

from joinery.core.corpus import x_coordinate
from joinery.core.observable import (
    Mode,
    Observable,
    compose,
    conditional_expectation,
    constant,
    exact_integral,
    generated_factor,
    indicator,
    inner,
    integral,
    is_measurable,
    norm_sq,
    product,
)
from joinery.core.partition import (
    Partition,
    is_finer,
    is_invariant,
    join_partitions,
    trivial_partition,
)
from joinery.core.system import FiniteSystem
from joinery.exact import ZERO, ExactComplex
from joinery.exceptions import (
    MixedModeError,
    ModeError,
    ObservableLengthError,
    SystemMismatchError,
)

F = Fraction

TRIALS = 200
FACTOR_TRIALS = 40
MAX_POINTS = 8


def test_length_is_checked(z5_12: FiniteSystem) -> None:
    with pytest.raises(ObservableLengthError):
        Observable.exact(z5_12, [1, 2])


def test_integral_and_norm(centred_delta: Observable) -> None:
    assert exact_integral(centred_delta) == ZERO
    assert norm_sq(centred_delta) == F(4, 25)
    assert inner(centred_delta, centred_delta) == ExactComplex(F(4, 25))


def test_float_mode(z5_12: FiniteSystem, delta: Observable) -> None:
    floats = Observable.floating(z5_12, [0.5j] * 5)

    total = floats + delta.to_float()

    assert total.mode is Mode.FLOAT
    assert integral(total) == pytest.approx(0.2 + 0.5j)
    with pytest.raises(ModeError):
        norm_sq(floats)


def test_mixed_modes_are_refused(z5_12: FiniteSystem, delta: Observable) -> None:
    floats = Observable.floating(z5_12, [0.5, 0, 0, 0, 0])

    for combine in (Observable.__add__, Observable.__sub__, Observable.__mul__):
        with pytest.raises(MixedModeError, match='to_float'):
            combine(delta, floats)
        with pytest.raises(MixedModeError):
            combine(floats, delta)
    assert (delta + delta).is_exact


def test_arithmetic_needs_one_system(z5_12: FiniteSystem, z5_rotation: FiniteSystem) -> None:
    with pytest.raises(SystemMismatchError):
        constant(z5_12, 1) + constant(z5_rotation, 1)


def test_compose_and_product(z5_12: FiniteSystem, delta: Observable) -> None:
    shifted = compose(delta, z5_12.maps[0])

    assert shifted == indicator(z5_12, [4])
    assert product([delta, shifted]).is_zero()
    assert delta.scale(3) == indicator(z5_12, [0]).scale(F(3))


def test_conditional_expectation_on_trivial(z5_12: FiniteSystem, delta: Observable) -> None:
    assert conditional_expectation(delta, trivial_partition(z5_12)) == constant(z5_12, F(1, 5))


def test_conditional_expectation_is_zero_on_null_block() -> None:
    system = FiniteSystem([F(1, 2), F(0), F(1, 2)], [[0, 1, 2]])
    f = Observable.exact(system, [1, 5, 3])

    projected = conditional_expectation(f, Partition.from_keys(system, [0, 1, 0]))

    assert projected == Observable.exact(system, [2, 0, 2])


def test_is_measurable(z5_12: FiniteSystem, delta: Observable) -> None:
    trivial = trivial_partition(z5_12)

    assert not is_measurable(delta, trivial)
    assert is_measurable(constant(z5_12, 7), trivial)


def test_generated_factor(z5_12: FiniteSystem, grid_c: FiniteSystem, delta: Observable) -> None:
    assert generated_factor(z5_12, [delta]).size == 5  # noqa: PLR2004
    assert generated_factor(z5_12, []).size == 1

    column = indicator(grid_c, range(5))
    factor = generated_factor(grid_c, [column])

    assert factor == Partition.from_keys(grid_c, x_coordinate(5))
    assert is_invariant(factor)
    assert is_measurable(column, factor)


def set_partitions(n: int) -> Iterator[list[int]]:
    """Every partition of ``0..n-1`` as a restricted growth string."""

    def extend(prefix: list[int], top: int) -> Iterator[list[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for label in range(top + 2):
            yield from extend([*prefix, label], max(top, label))

    yield from extend([0], 0)


def random_observable(system: FiniteSystem, rng: np.random.Generator) -> Observable:
    return Observable.exact(system, rng.integers(-2, 3, size=system.n).tolist())


def random_keys(system: FiniteSystem, rng: np.random.Generator) -> list[int]:
    return rng.integers(0, 3, size=system.n).tolist()


def test_conditional_expectation_laws(
    rng: np.random.Generator, random_system: Callable[[int], FiniteSystem]
) -> None:
    for _ in range(TRIALS):
        system = random_system(int(rng.integers(1, MAX_POINTS + 1)))
        f = random_observable(system, rng)
        coarse = Partition.from_keys(system, random_keys(system, rng))
        fine = join_partitions(coarse, Partition.from_keys(system, random_keys(system, rng)))

        projected = conditional_expectation(f, fine)

        assert conditional_expectation(projected, fine) == projected
        assert exact_integral(projected) == exact_integral(f)
        assert conditional_expectation(projected, coarse) == conditional_expectation(f, coarse)
        assert is_measurable(projected, fine)


def test_generated_factor_is_the_coarsest(
    rng: np.random.Generator, random_system: Callable[[int], FiniteSystem]
) -> None:
    for _ in range(FACTOR_TRIALS):
        system = random_system(int(rng.integers(1, MAX_POINTS + 1)))
        fs = [random_observable(system, rng) for _ in range(int(rng.integers(1, 3)))]

        factor = generated_factor(system, fs)

        assert is_invariant(factor)
        assert all(is_measurable(f, factor) for f in fs)
        for labels in set_partitions(system.n):
            candidate = Partition.from_keys(system, labels)
            if is_invariant(candidate) and all(is_measurable(f, candidate) for f in fs):
                assert is_finer(candidate, factor)
