from collections.abc import Sequence
from fractions import Fraction

import structlog
from attrs import define, field

from joinery.constant import DEFAULT_PERIOD_CAP
from joinery.core.observable import Observable, conditional_expectation, norm_sq
from joinery.core.partition import largest_C_factor, same_system
from joinery.core.system import FiniteSystem, averaging_periods, diagonal_orbit
from joinery.exact import ONE, ExactComplex, exact_sum
from joinery.exceptions import ArityError, InvariantViolationError, ParameterError

log: structlog.BoundLogger = structlog.get_logger(__name__)


def _values(
    x: FiniteSystem, fs: Sequence[Observable], operation: str
) -> list[tuple[ExactComplex, ...]]:
    if len(fs) != x.d:
        raise ArityError(expected=x.d, received=len(fs))
    values = []
    for f in fs:
        same_system(x, f.system, operation)
        values.append(f.exact_values(operation))
    return values


def _term(values: Sequence[tuple[ExactComplex, ...]], images: tuple[int, ...]) -> ExactComplex:
    term = ONE
    for slot_values, image in zip(values, images, strict=True):
        term *= slot_values[image]
    return term


def _orbit_average(
    x: FiniteSystem, values: Sequence[tuple[ExactComplex, ...]], point: int, length: int
) -> ExactComplex:
    terms = [_term(values, images) for images in diagonal_orbit(x, point, length)]
    return exact_sum(terms) / length


def multiple_average(x: FiniteSystem, fs: Sequence[Observable], length: int) -> Observable:
    """``A_N = (1/N) sum_{n=1..N} prod_i f_i o T_i^n``."""
    if length < 1:
        raise ParameterError(name='N', value=length)
    values = _values(x, fs, 'multiple_average')
    return Observable.exact(x, (_orbit_average(x, values, p, length) for p in range(x.n)))


def exact_limit_average(
    x: FiniteSystem, fs: Sequence[Observable], *, period_cap: int = DEFAULT_PERIOD_CAP
) -> Observable:
    """Limit of ``A_N``: the average over one full period of every diagonal orbit."""
    values = _values(x, fs, 'exact_limit_average')
    periods = averaging_periods(x, period_cap)
    limit = Observable.exact(
        x, (_orbit_average(x, values, p, period) for p, period in enumerate(periods))
    )
    log.debug('Exact limit computed', period=max(periods))
    return limit


@define(frozen=True)
class ProjectionCheck:
    holds: bool
    discrepancy_sq: Fraction


def limit_equals_projected(
    x: FiniteSystem, fs: Sequence[Observable], *, period_cap: int = DEFAULT_PERIOD_CAP
) -> ProjectionCheck:
    """Compare the limit with the limit after replacing ``f_1`` by ``E[f_1 | X_C]``."""
    limit = exact_limit_average(x, fs, period_cap=period_cap)
    projected = conditional_expectation(fs[0], largest_C_factor(x))
    projected_limit = exact_limit_average(x, [projected, *fs[1:]], period_cap=period_cap)
    discrepancy = norm_sq(limit - projected_limit)
    return ProjectionCheck(discrepancy == 0, discrepancy)


@define(frozen=True)
class AverageReport:
    length: int
    period: int
    average: Observable = field(repr=False)
    limit: Observable = field(repr=False)
    discrepancy_sq: Fraction
    bound_sq: Fraction


def sup_product_sq(
    x: FiniteSystem, fs: Sequence[Observable], *, period_cap: int = DEFAULT_PERIOD_CAP
) -> Fraction:
    """``max |prod_i f_i(T_i^n p)|^2`` over every point ``p`` and one period of ``n``."""
    values = _values(x, fs, 'sup_product_sq')
    periods = averaging_periods(x, period_cap)
    return max(
        (
            _term(values, images).abs_sq()
            for point, period in enumerate(periods)
            for images in diagonal_orbit(x, point, period)
        ),
        default=Fraction(0),
    )


def average_report(
    x: FiniteSystem, fs: Sequence[Observable], length: int, *, period_cap: int = DEFAULT_PERIOD_CAP
) -> AverageReport:
    """``A_N`` against its limit with the telescoping bound ``||A_N - limit|| <= 2 P M / N``."""
    average = multiple_average(x, fs, length)
    limit = exact_limit_average(x, fs, period_cap=period_cap)
    period = max(averaging_periods(x, period_cap))

    discrepancy = norm_sq(average - limit)
    sup_sq = sup_product_sq(x, fs, period_cap=period_cap)
    bound = (2 * period) ** 2 * sup_sq / Fraction(length) ** 2
    if discrepancy > bound:
        raise InvariantViolationError(check='periodic bound on the distance to the limit')

    return AverageReport(length, period, average, limit, discrepancy, bound)
