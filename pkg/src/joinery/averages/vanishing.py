from collections.abc import Sequence
from fractions import Fraction

import structlog
from attrs import define

from joinery.constant import DEFAULT_PERIOD_CAP
from joinery.core.factor import factor_quotient
from joinery.core.observable import Observable, conditional_expectation, norm_sq
from joinery.core.partition import isotropy_partition, largest_C_factor, same_system
from joinery.core.system import FiniteSystem, unit_word
from joinery.exact import ONE
from joinery.exceptions import ArityError, InvariantViolationError
from joinery.joinings.coupling import Coupling, Point
from joinery.joinings.furstenberg import BigSystem, big_system
from joinery.joinings.satedness import satedness_certificate

log: structlog.BoundLogger = structlog.get_logger(__name__)


@define(frozen=True)
class VanishingReport:
    integral: Fraction
    vanishes: bool
    projection_zero: bool
    lifted_zero: bool
    residual_sq: Fraction


def tensor_observable(big: BigSystem, fs: Sequence[Observable]) -> Observable:
    """``f_1 (x) ... (x) f_d`` restricted to the support of the self-joining."""
    values = [f.exact_values('tensor_observable') for f in fs]
    tensor = []
    for point in big.points:
        term = ONE
        for slot_values, coordinate in zip(values, point, strict=True):
            term *= slot_values[coordinate]
        tensor.append(term)
    return Observable.exact(big.system, tensor)


def c_factor_joining(big: BigSystem) -> tuple[FiniteSystem, Coupling]:
    """The C-system ``X~ / X~_C`` joined with ``x`` through the first coordinate."""
    quotient, projection = factor_quotient(big.system, largest_C_factor(big.system))
    masses: dict[Point, Fraction] = {}
    for position, point in enumerate(big.points):
        key = (point[0], projection(position))
        masses[key] = masses.get(key, Fraction(0)) + big.system.weights[position]
    return quotient, Coupling((big.first_coordinate.target, quotient), masses)


def vanishing_check(
    x: FiniteSystem, fs: Sequence[Observable], *, period_cap: int = DEFAULT_PERIOD_CAP
) -> VanishingReport:
    """``integral of F E[conj F | I(T~_1)]`` over the Furstenberg self-joining, with
    ``F = f_1 (x) ... (x) f_d``. It equals ``||E[F | I(T~_1)]||^2``."""
    if len(fs) != x.d:
        raise ArityError(expected=x.d, received=len(fs))
    for f in fs:
        same_system(x, f.system, 'vanishing_check')

    big = big_system(x, period_cap=period_cap)
    tensor = tensor_observable(big, fs)
    invariant = isotropy_partition(big.system, unit_word(x.d, 0))
    integral = norm_sq(conditional_expectation(tensor, invariant))

    projection_zero = conditional_expectation(fs[0], largest_C_factor(x)).is_zero()
    lifted = big.first_coordinate.pull(fs[0])
    lifted_zero = conditional_expectation(lifted, largest_C_factor(big.system)).is_zero()

    quotient, joining = c_factor_joining(big)
    residual = satedness_certificate(x, quotient, joining, fs[0]).residual_sq

    if projection_zero and residual == 0 and not lifted_zero:
        raise InvariantViolationError(check='zero certificate with a nonzero lifted projection')
    if lifted_zero and integral != 0:
        raise InvariantViolationError(check='lifted projection vanishes but the integral does not')

    log.debug(
        'Vanishing integral evaluated',
        integral=str(integral),
        projection_zero=projection_zero,
        residual_sq=str(residual),
    )
    return VanishingReport(integral, integral == 0, projection_zero, lifted_zero, residual)
