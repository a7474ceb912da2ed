from fractions import Fraction

import structlog
from attrs import define, field

from joinery.constant import DEFAULT_PERIOD_CAP
from joinery.core.factor import FactorMap
from joinery.core.partition import Partition, is_finer, largest_C_factor
from joinery.core.system import (
    FiniteSystem,
    Permutation,
    averaging_periods,
    diagonal_orbit,
    require_valid,
    transform_word,
    unit_word,
)
from joinery.exceptions import CouplingError, InvariantViolationError, ParameterError
from joinery.joinings.coupling import (
    Coupling,
    Point,
    SlotWords,
    check_equivariance,
    diagonal_words,
    validate_coupling,
)

log: structlog.BoundLogger = structlog.get_logger(__name__)


def joint_words(d: int) -> SlotWords:
    """``T_1 x T_2 x ... x T_d``: map ``i`` in slot ``i``."""
    return tuple(unit_word(d, index) for index in range(d))


def furstenberg_words(d: int) -> tuple[SlotWords, ...]:
    return (*(diagonal_words(d, d, index) for index in range(d)), joint_words(d))


def furstenberg_self_joining(x: FiniteSystem, *, period_cap: int = DEFAULT_PERIOD_CAP) -> Coupling:
    """Cesaro limit of the diagonal measure pushed by ``T_1^n x ... x T_d^n``, computed over
    one period of every diagonal orbit."""
    require_valid(x)
    periods = averaging_periods(x, period_cap)

    masses: dict[Point, Fraction] = {}
    for point in x.positive:
        period = periods[point]
        share = x.weights[point] / period
        for image in diagonal_orbit(x, point, period):
            masses[image] = masses.get(image, Fraction(0)) + share

    words = furstenberg_words(x.d)
    joining = Coupling((x,) * x.d, masses, words)
    try:
        validate_coupling(joining)
    except CouplingError as error:
        raise InvariantViolationError(check=f'Furstenberg self-joining: {error}') from error

    log.debug('Furstenberg self-joining built', period=max(periods), support=len(joining.masses))
    return joining


def cesaro_self_joining(x: FiniteSystem, length: int) -> Coupling:
    """``(1/N) sum_{n=1..N}`` of the diagonal measure pushed by ``T_1^n x ... x T_d^n``."""
    if length < 1:
        raise ParameterError(name='N', value=length)

    masses: dict[Point, Fraction] = {}
    for n in range(1, length + 1):
        powers = [perm.power(n) for perm in x.maps]
        for point in x.positive:
            image = tuple(perm(point) for perm in powers)
            masses[image] = masses.get(image, Fraction(0)) + x.weights[point] / length
    return Coupling((x,) * x.d, masses)


@define(frozen=True)
class BigSystem:
    """The system carried by the Furstenberg self-joining, with the first coordinate as a
    factor map back to the original system."""

    system: FiniteSystem = field(repr=False)
    points: tuple[Point, ...]
    first_coordinate: FactorMap = field(repr=False)
    joining: Coupling = field(repr=False)

    def coordinate_partition(self, slot: int) -> Partition:
        return Partition.from_keys(self.system, [point[slot] for point in self.points])


def big_system(x: FiniteSystem, *, period_cap: int = DEFAULT_PERIOD_CAP) -> BigSystem:
    joining = furstenberg_self_joining(x, period_cap=period_cap)
    points = tuple(joining.support)
    index = {point: position for position, point in enumerate(points)}

    words = [joint_words(x.d), *(diagonal_words(x.d, x.d, i) for i in range(1, x.d))]
    maps = []
    for slot_words in words:
        if not check_equivariance(joining, slot_words).holds:
            raise InvariantViolationError(check='big system map does not preserve the joining')
        perms = [transform_word(x, word) for word in slot_words]
        maps.append(
            Permutation(
                index[tuple(perm(p) for perm, p in zip(perms, point, strict=True))]
                for point in points
            )
        )

    system = require_valid(FiniteSystem([joining.masses[p] for p in points], maps))
    first = FactorMap(system, x, [point[0] for point in points])
    big = BigSystem(system, points, first, joining)

    c_factor = largest_C_factor(system)
    for slot in range(1, x.d):
        if not is_finer(c_factor, big.coordinate_partition(slot)):
            raise InvariantViolationError(check=f'coordinate {slot} is not in the C-factor')

    log.debug('Big system built', points=system.n, maps=system.d)
    return big

