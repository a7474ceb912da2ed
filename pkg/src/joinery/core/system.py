import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import cached_property

import structlog
from attrs import define, field

from joinery.exceptions import (
    ArityError,
    InvalidSystemError,
    NotAPermutationError,
    PeriodCapError,
)

log: structlog.BoundLogger = structlog.get_logger(__name__)

type Word = tuple[int, ...]


@define(frozen=True)
class Permutation:
    """Self-map of ``0..n-1`` given by its images.

    Bijectivity is checked on first use, so a broken map still loads and
    :func:`validate_system` can report it.
    """

    images: tuple[int, ...] = field(converter=tuple)

    @cached_property
    def is_bijective(self) -> bool:
        return sorted(self.images) == list(range(len(self.images)))

    def require_bijective(self) -> None:
        if not self.is_bijective:
            raise NotAPermutationError(images=self.images)

    @cached_property
    def inverse_images(self) -> tuple[int, ...]:
        self.require_bijective()
        inverse = [0] * len(self.images)
        for point, image in enumerate(self.images):
            inverse[image] = point
        return tuple(inverse)

    @classmethod
    def identity(cls, size: int) -> 'Permutation':
        return cls(range(size))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    @property
    def inverse(self) -> 'Permutation':
        return Permutation(self.inverse_images)

    def then(self, other: 'Permutation') -> 'Permutation':
        """``other`` applied after ``self``."""
        self.require_bijective()
        other.require_bijective()
        return Permutation(other.images[image] for image in self.images)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        self.require_bijective()
        seen = [False] * len(self.images)
        cycles: list[tuple[int, ...]] = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            cycles.append(tuple(cycle))
        return tuple(cycles)

    @cached_property
    def cycle_lengths(self) -> tuple[int, ...]:
        lengths = [0] * len(self.images)
        for cycle in self.cycles:
            for point in cycle:
                lengths[point] = len(cycle)
        return tuple(lengths)

    @cached_property
    def order(self) -> int:
        return math.lcm(*(len(cycle) for cycle in self.cycles))

    def power(self, exponent: int) -> 'Permutation':
        images = [0] * len(self.images)
        for cycle in self.cycles:
            size = len(cycle)
            shift = exponent % size
            for index, point in enumerate(cycle):
                images[point] = cycle[(index + shift) % size]
        return Permutation(images)

    def is_identity(self) -> bool:
        return all(image == point for point, image in enumerate(self.images))


def _as_maps(maps: Iterable[Permutation | Sequence[int]]) -> tuple[Permutation, ...]:
    return tuple(m if isinstance(m, Permutation) else Permutation(m) for m in maps)


def _as_weights(weights: Iterable[Fraction | int]) -> tuple[Fraction, ...]:
    return tuple(Fraction(weight) for weight in weights)


@define(frozen=True)
class FiniteSystem:
    """Weighted finite set with ``d`` commuting permutations; invalid data is kept so that
    :func:`validate_system` can report on it."""

    weights: tuple[Fraction, ...] = field(converter=_as_weights)
    maps: tuple[Permutation, ...] = field(converter=_as_maps)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def d(self) -> int:
        return len(self.maps)

    @cached_property
    def positive(self) -> tuple[int, ...]:
        return tuple(point for point, weight in enumerate(self.weights) if weight > 0)


@define(frozen=True)
class Violation:
    kind: str
    description: str
    maps: tuple[int, ...] = ()
    point: int | None = None


@define(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations


def _shape_violations(system: FiniteSystem) -> tuple[list[Violation], list[int]]:
    """Shape and bijectivity problems, plus the indices of the maps that are permutations."""
    violations: list[Violation] = []
    if not system.n:
        violations.append(Violation('shape', 'system has no points'))
    if not system.d:
        violations.append(Violation('shape', 'system has no maps'))

    sound: list[int] = []
    for index, perm in enumerate(system.maps):
        if len(perm) != system.n:
            description = f'map {index} acts on {len(perm)} points, expected {system.n}'
            violations.append(Violation('map_length', description, maps=(index,)))
        elif not perm.is_bijective:
            description = f'map {index} is not a bijection: {list(perm.images)}'
            violations.append(Violation('bijection', description, maps=(index,)))
        else:
            sound.append(index)
    return violations, sound


def validate_system(system: FiniteSystem) -> ValidationReport:
    violations, sound = _shape_violations(system)

    total = sum(system.weights, Fraction(0))
    if total != 1:
        violations.append(Violation('mass', f'weights sum to {total}, not 1'))

    violations.extend(
        Violation('negative_weight', f'weight of point {point} is {weight}', point=point)
        for point, weight in enumerate(system.weights)
        if weight < 0
    )

    for index in sound:
        perm, weights = system.maps[index], system.weights
        point = next((p for p in range(system.n) if weights[perm(p)] != weights[p]), None)
        if point is not None:
            violations.append(
                Violation(
                    'measure_preservation',
                    f'map {index} sends point {point} to {perm(point)} with a different weight',
                    maps=(index,),
                    point=point,
                )
            )

    for position, first in enumerate(sound):
        for second in sound[position + 1 :]:
            s, t = system.maps[first], system.maps[second]
            point = next((p for p in range(system.n) if s(t(p)) != t(s(p))), None)
            if point is not None:
                violations.append(
                    Violation(
                        'commutation',
                        f'maps {first} and {second} do not commute at point {point}',
                        maps=(first, second),
                        point=point,
                    )
                )

    report = ValidationReport(tuple(violations))
    log.debug('System validated', points=system.n, maps=system.d, violations=len(violations))
    return report


def require_valid(system: FiniteSystem) -> FiniteSystem:
    report = validate_system(system)
    if not report.passed:
        raise InvalidSystemError(failures=tuple(v.description for v in report.violations))
    return system


def unit_word(d: int, index: int, exponent: int = 1) -> Word:
    return tuple(exponent if i == index else 0 for i in range(d))


def difference_word(d: int, index: int) -> Word:
    """Exponents of ``T_index T_0^{-1}``."""
    word = [0] * d
    word[index] += 1
    word[0] -= 1
    return tuple(word)


def transform_word(system: FiniteSystem, exponents: Sequence[int]) -> Permutation:
    if len(exponents) != system.d:
        raise ArityError(expected=system.d, received=len(exponents))

    result = Permutation.identity(system.n)
    for perm, exponent in zip(system.maps, exponents, strict=True):
        if exponent:
            result = result.then(perm.power(exponent))
    return result


def system_period(system: FiniteSystem) -> int:
    """Least common multiple of the orders of all maps."""
    return math.lcm(*(perm.order for perm in system.maps))


def point_period(system: FiniteSystem, point: int) -> int:
    """Period of ``n -> (T_1^n x, ..., T_d^n x)`` at ``x = point``."""
    return math.lcm(*(perm.cycle_lengths[point] for perm in system.maps))


def averaging_periods(system: FiniteSystem, cap: int) -> tuple[int, ...]:
    """Per-point averaging lengths: the global period when it fits under ``cap``, otherwise
    each point's own period."""
    period = system_period(system)
    if period <= cap:
        return (period,) * system.n

    periods = tuple(point_period(system, point) for point in range(system.n))
    longest = max(periods)
    if longest > cap:
        raise PeriodCapError(period=longest, cap=cap)

    log.info('Global period above cap, using per-point periods', period=period, cap=cap)
    return periods


def diagonal_orbit(system: FiniteSystem, point: int, length: int) -> list[tuple[int, ...]]:
    """``(T_1^n x, ..., T_d^n x)`` for ``n = 1..length``."""
    current = (point,) * system.d
    orbit = []
    for _ in range(length):
        current = tuple(perm(p) for perm, p in zip(system.maps, current, strict=True))
        orbit.append(current)
    return orbit

