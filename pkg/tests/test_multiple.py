from fractions import Fraction

import pytest

from joinery.averages.multiple import (
    average_report,
    exact_limit_average,
    limit_equals_projected,
    multiple_average,
    sup_product_sq,
)
from joinery.core.corpus import CorpusEntry, bundled_corpus, cyclic_system
from joinery.core.observable import Observable, constant, indicator
from joinery.core.partition import is_C_system
from joinery.core.system import FiniteSystem, system_period
from joinery.exact import ExactComplex
from joinery.exceptions import (
    ArityError,
    ModeError,
    ParameterError,
    PeriodCapError,
    SystemMismatchError,
)

F = Fraction

CORPUS = list(bundled_corpus())


def sample_observables(system: FiniteSystem) -> list[Observable]:
    return [
        Observable.exact(
            system, (ExactComplex(F((p * (i + 2)) % 3, i + 1), p % 2) for p in range(system.n))
        )
        for i in range(system.d)
    ]


@pytest.mark.parametrize('entry', CORPUS, ids=lambda entry: entry.name)
def test_average_over_whole_periods_is_the_limit(entry: CorpusEntry) -> None:
    system = entry.system
    fs = sample_observables(system)
    limit = exact_limit_average(system, fs)
    period = system_period(system)

    for k in (1, 2, 3):
        assert multiple_average(system, fs, k * period) == limit


@pytest.mark.parametrize('entry', CORPUS, ids=lambda entry: entry.name)
def test_distance_to_the_limit_is_bounded(entry: CorpusEntry) -> None:
    system = entry.system
    fs = sample_observables(system)

    for length in (1, 2, 3, 7, 11):
        report = average_report(system, fs, length)
        assert report.discrepancy_sq <= report.bound_sq
        assert report.period == system_period(system)


@pytest.mark.parametrize(
    'entry', [entry for entry in CORPUS if is_C_system(entry.system)], ids=lambda e: e.name
)
def test_limit_is_unchanged_by_projection_on_c_systems(entry: CorpusEntry) -> None:
    check = limit_equals_projected(entry.system, sample_observables(entry.system))

    assert check.holds
    assert check.discrepancy_sq == 0


def test_limit_depends_on_more_than_the_c_factor(
    z5_12: FiniteSystem, centred_delta: Observable, delta: Observable
) -> None:
    check = limit_equals_projected(z5_12, [centred_delta, delta])

    assert not check.holds
    assert check.discrepancy_sq == F(4, 625)


def test_limit_of_the_centred_delta(
    z5_12: FiniteSystem, centred_delta: Observable, delta: Observable
) -> None:
    limit = exact_limit_average(z5_12, [centred_delta, delta])

    assert limit == centred_delta.scale(F(1, 5))


def test_constants_average_to_their_product(z5_12: FiniteSystem) -> None:
    fs = [constant(z5_12, F(1, 2)), constant(z5_12, 3)]

    assert multiple_average(z5_12, fs, 4) == constant(z5_12, F(3, 2))


def test_average_report_values(
    z5_12: FiniteSystem, centred_delta: Observable, delta: Observable
) -> None:
    report = average_report(z5_12, [centred_delta, delta], 7)

    assert report.length == 7  # noqa: PLR2004
    assert report.bound_sq == F(64, 49)
    assert sup_product_sq(z5_12, [centred_delta, delta]) == F(16, 25)


def test_sup_bound_follows_the_diagonal_orbits() -> None:
    system = cyclic_system(5, (1, 1))
    fs = [indicator(system, [0]), indicator(system, [1])]

    assert sup_product_sq(system, fs) == 0
    report = average_report(system, fs, 3)
    assert report.bound_sq == 0
    assert report.discrepancy_sq == 0


def test_average_errors(z5_12: FiniteSystem, z5_rotation: FiniteSystem, delta: Observable) -> None:
    with pytest.raises(ParameterError):
        multiple_average(z5_12, [delta, delta], 0)
    with pytest.raises(ArityError):
        multiple_average(z5_12, [delta], 3)
    with pytest.raises(SystemMismatchError):
        multiple_average(z5_rotation, [delta], 3)
    with pytest.raises(ModeError):
        multiple_average(z5_12, [delta, Observable.floating(z5_12, [1.0] * 5)], 3)
    with pytest.raises(PeriodCapError):
        exact_limit_average(z5_12, [delta, delta], period_cap=3)


def test_single_map_average_is_the_ergodic_average() -> None:
    system = cyclic_system(4, (1,))
    f = indicator(system, [0, 1])

    assert exact_limit_average(system, [f]) == constant(system, F(1, 2))
