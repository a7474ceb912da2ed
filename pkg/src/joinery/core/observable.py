from collections.abc import Callable, Iterable, Sequence
from enum import StrEnum
from fractions import Fraction
from functools import reduce

import numpy as np
import structlog
from attrs import define, field

from joinery.core.partition import Partition, same_system
from joinery.core.system import FiniteSystem, Permutation
from joinery.exact import ONE, ZERO, ExactComplex, Number, exact_sum
from joinery.exceptions import MixedModeError, ModeError, ObservableLengthError

log: structlog.BoundLogger = structlog.get_logger(__name__)

type Scalar = ExactComplex | complex


class Mode(StrEnum):
    EXACT = 'exact'
    FLOAT = 'float'


@define(frozen=True)
class Observable:
    system: FiniteSystem = field(repr=False)
    values: tuple[Scalar, ...] = field(converter=tuple)
    mode: Mode = Mode.EXACT

    def __attrs_post_init__(self) -> None:
        if len(self.values) != self.system.n:
            raise ObservableLengthError(points=self.system.n, values=len(self.values))

    @classmethod
    def exact(cls, system: FiniteSystem, values: Iterable[Number]) -> 'Observable':
        return cls(system, (ExactComplex.coerce(value) for value in values), Mode.EXACT)

    @classmethod
    def floating(cls, system: FiniteSystem, values: Iterable[complex]) -> 'Observable':
        return cls(system, (complex(value) for value in values), Mode.FLOAT)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    def exact_values(self, operation: str) -> tuple[ExactComplex, ...]:
        if not self.is_exact:
            raise ModeError(operation=operation)
        return self.values  # type: ignore[return-value]

    def to_array(self) -> np.ndarray:
        return np.array([complex(value) for value in self.values], dtype=np.complex128)

    def to_float(self) -> 'Observable':
        return Observable.floating(self.system, map(complex, self.values))

    def _combine(self, other: 'Observable', operation: Callable[..., Scalar]) -> 'Observable':
        same_system(self.system, other.system, 'observable arithmetic')
        if self.mode is not other.mode:
            raise MixedModeError(operation='observable arithmetic')
        pairs = zip(self.values, other.values, strict=True)
        return Observable(self.system, (operation(a, b) for a, b in pairs), self.mode)

    def __add__(self, other: 'Observable') -> 'Observable':
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: 'Observable') -> 'Observable':
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other: 'Observable') -> 'Observable':
        return self._combine(other, lambda a, b: a * b)

    def scale(self, factor: Number) -> 'Observable':
        if self.is_exact:
            return Observable.exact(self.system, (value * factor for value in self.values))
        return Observable.floating(self.system, (value * complex(factor) for value in self.values))

    def is_zero(self) -> bool:
        """Zero almost everywhere."""
        return all(not self.values[point] for point in self.system.positive)


def constant(system: FiniteSystem, value: Number) -> Observable:
    return Observable.exact(system, [value] * system.n)


def indicator(system: FiniteSystem, points: Iterable[int]) -> Observable:
    members = set(points)
    return Observable.exact(system, (ONE if p in members else ZERO for p in range(system.n)))


def compose(f: Observable, perm: Permutation) -> Observable:
    """``f o perm``."""
    return Observable(f.system, (f.values[perm(point)] for point in range(f.system.n)), f.mode)


def conjugate(f: Observable) -> Observable:
    return Observable(f.system, (value.conjugate() for value in f.values), f.mode)


def product(fs: Sequence[Observable]) -> Observable:
    return reduce(Observable.__mul__, fs)


def exact_integral(f: Observable) -> ExactComplex:
    values = f.exact_values('integral')
    return exact_sum([v * w for v, w in zip(values, f.system.weights, strict=True)])


def integral(f: Observable) -> Scalar:
    if f.is_exact:
        return exact_integral(f)
    weights = np.array([float(w) for w in f.system.weights])
    return complex(np.sum(f.to_array() * weights))


def inner(f: Observable, g: Observable) -> Scalar:
    """``<f, g> = integral of f times conj(g)``."""
    return integral(f * conjugate(g))


def norm_sq(f: Observable) -> Fraction:
    values = f.exact_values('norm_sq')
    return sum(
        (w * v.abs_sq() for v, w in zip(values, f.system.weights, strict=True)), Fraction(0)
    )


def conditional_expectation(f: Observable, partition: Partition) -> Observable:
    """Block averages of ``f`` weighted by the measure; zero on null blocks."""
    same_system(f.system, partition.system, 'conditional_expectation')
    values = f.exact_values('conditional_expectation')

    sums = [ZERO] * partition.size
    for point, label in enumerate(partition.labels):
        sums[label] += values[point] * f.system.weights[point]

    averages = [
        total / mass if mass else ZERO
        for total, mass in zip(sums, partition.block_mass, strict=True)
    ]
    return Observable.exact(f.system, (averages[label] for label in partition.labels))


def level_set_partition(fs: Sequence[Observable]) -> Partition:
    system = fs[0].system
    for f in fs:
        same_system(system, f.system, 'level_set_partition')
    keys = list(zip(*(f.exact_values('level_set_partition') for f in fs), strict=True))
    return Partition.from_keys(system, keys)


def is_measurable(f: Observable, partition: Partition) -> bool:
    projected = conditional_expectation(f, partition)
    return all(projected.values[p] == f.values[p] for p in partition.system.positive)


def generated_factor(system: FiniteSystem, fs: Sequence[Observable]) -> Partition:
    """Smallest invariant partition making every ``f`` measurable."""
    if not fs:
        fs = [constant(system, 1)]
    same_system(system, fs[0].system, 'generated_factor')

    partition = level_set_partition(fs)
    moves = [perm for m in system.maps for perm in (m, m.inverse)]
    rounds = 0
    while True:
        labels = partition.labels
        keys = [
            (labels[point], *(labels[perm(point)] for perm in moves))
            for point in range(system.n)
        ]
        refined = Partition.from_keys(system, keys)
        rounds += 1
        if refined.size == partition.size:
            break
        partition = refined

    log.debug('Generated factor found', blocks=partition.size, rounds=rounds)
    return partition
