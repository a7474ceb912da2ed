import math
from collections.abc import Sequence

import numpy as np
import structlog
from attrs import define

from joinery.constant import DEFAULT_WEYL_DIRECT_LIMIT, RESONANCE_TOLERANCE
from joinery.exceptions import (
    ArityError,
    InvariantViolationError,
    ParameterError,
    ResonanceError,
)

log: structlog.BoundLogger = structlog.get_logger(__name__)

BOUND_SLACK = 1e-9


@define(frozen=True)
class WeylSum:
    frequency: tuple[int, ...]
    theta: float
    length: int
    value: float
    bound: float


def integer_distance(theta: float) -> float:
    reduced = theta % 1.0
    return min(reduced, 1.0 - reduced)


def is_resonant(theta: float) -> bool:
    return integer_distance(theta) < RESONANCE_TOLERANCE


def weyl_average(
    theta: float, length: int, *, direct_limit: int = DEFAULT_WEYL_DIRECT_LIMIT
) -> complex:
    """``(1/N) sum_{n=1..N} e^{2 pi i n theta}``: summed directly up to ``direct_limit`` terms,
    by the geometric closed form above it."""
    if length < 1:
        raise ParameterError(name='N', value=length)
    theta %= 1.0
    if theta == 0:
        return 1 + 0j

    if length <= direct_limit:
        n = np.arange(1, length + 1, dtype=np.float64)
        return complex(np.mean(np.exp(2j * np.pi * np.mod(n * theta, 1.0))))

    if is_resonant(theta):
        return 1 + 0j
    z = np.exp(2j * np.pi * theta)
    z_n = np.exp(2j * np.pi * ((length * theta) % 1.0))
    return complex(z * (z_n - 1) / (length * (z - 1)))


def geometric_bound(theta: float, length: int) -> float:
    """``1 / (N |sin(pi theta)|)``."""
    return 1.0 / (length * abs(math.sin(math.pi * theta)))


def required_length(theta: float, tolerance: float, frequency: Sequence[int] = ()) -> int:
    """Smallest ``N`` with ``geometric_bound(theta, N) <= tolerance``."""
    if tolerance <= 0:
        raise ParameterError(name='tolerance', value=tolerance)
    if is_resonant(theta):
        raise ResonanceError(frequency=tuple(frequency), theta=theta)
    return max(1, math.ceil(1.0 / (tolerance * abs(math.sin(math.pi * theta)))))


def weyl_sum_at_angle(
    frequency: Sequence[int],
    theta: float,
    length: int,
    *,
    direct_limit: int = DEFAULT_WEYL_DIRECT_LIMIT,
) -> WeylSum:
    frequency = tuple(frequency)
    if is_resonant(theta):
        raise ResonanceError(frequency=frequency, theta=theta)

    value = abs(weyl_average(theta, length, direct_limit=direct_limit))
    bound = geometric_bound(theta, length)
    if value > bound * (1 + BOUND_SLACK) + RESONANCE_TOLERANCE:
        raise InvariantViolationError(check=f'Weyl sum above the geometric bound at {frequency}')
    return WeylSum(frequency, theta % 1.0, length, value, bound)


def weyl_sum(
    frequency: Sequence[int],
    rotation: Sequence[float],
    length: int,
    *,
    direct_limit: int = DEFAULT_WEYL_DIRECT_LIMIT,
) -> WeylSum:
    """``|(1/N) sum_{n=1..N} e^{2 pi i n <m, rotation>}|`` with its geometric bound."""
    if not any(frequency):
        raise ParameterError(name='frequency', value=list(frequency), requirement='nonzero')
    if len(frequency) != len(rotation):
        raise ArityError(expected=len(rotation), received=len(frequency))
    theta = math.fsum(m * b for m, b in zip(frequency, rotation, strict=True))
    result = weyl_sum_at_angle(frequency, theta, length, direct_limit=direct_limit)
    log.debug('Weyl sum evaluated', frequency=list(frequency), length=length, value=result.value)
    return result
