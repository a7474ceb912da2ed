from collections.abc import Hashable, Sequence
from fractions import Fraction
from functools import cached_property, reduce

import structlog
from attrs import define, field

from joinery.core.system import FiniteSystem, Word, difference_word, transform_word, unit_word
from joinery.exceptions import NonInvariantPartitionError, SystemMismatchError

log: structlog.BoundLogger = structlog.get_logger(__name__)


def canonical_labels(system: FiniteSystem, keys: Sequence[Hashable]) -> tuple[int, ...]:
    """Relabel ``keys`` by first appearance; every zero-weight point goes to one null block."""
    null = object()
    ids: dict[Hashable, int] = {}
    labels = []
    for point, key in enumerate(keys):
        block_key = null if system.weights[point] == 0 else key
        labels.append(ids.setdefault(block_key, len(ids)))
    return tuple(labels)


@define(frozen=True)
class Partition:
    """A sub-sigma-algebra of a finite system, as canonical block labels."""

    system: FiniteSystem = field(repr=False)
    labels: tuple[int, ...]

    @classmethod
    def from_keys(cls, system: FiniteSystem, keys: Sequence[Hashable]) -> 'Partition':
        if len(keys) != system.n:
            raise SystemMismatchError(operation='partition')
        return cls(system, canonical_labels(system, keys))

    @cached_property
    def size(self) -> int:
        return max(self.labels) + 1

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        blocks: list[list[int]] = [[] for _ in range(self.size)]
        for point, label in enumerate(self.labels):
            blocks[label].append(point)
        return tuple(tuple(block) for block in blocks)

    @cached_property
    def block_mass(self) -> tuple[Fraction, ...]:
        masses = [Fraction(0)] * self.size
        for point, label in enumerate(self.labels):
            masses[label] += self.system.weights[point]
        return tuple(masses)

    @cached_property
    def null_block(self) -> int | None:
        return next((b for b, mass in enumerate(self.block_mass) if mass == 0), None)

    def positive_blocks(self) -> int:
        return sum(1 for mass in self.block_mass if mass > 0)


def same_system(first: FiniteSystem, second: FiniteSystem, operation: str) -> None:
    if first is not second and first != second:
        raise SystemMismatchError(operation=operation)


def discrete_partition(system: FiniteSystem) -> Partition:
    return Partition.from_keys(system, range(system.n))


def trivial_partition(system: FiniteSystem) -> Partition:
    return Partition.from_keys(system, [0] * system.n)


def isotropy_partition(system: FiniteSystem, exponents: Sequence[int]) -> Partition:
    """Orbits of the word ``T_1^{e_1} ... T_d^{e_d}``: the sets it leaves invariant."""
    perm = transform_word(system, exponents)
    keys = [0] * system.n
    for cycle in perm.cycles:
        for point in cycle:
            keys[point] = cycle[0]
    return Partition.from_keys(system, keys)


def join_partitions(first: Partition, second: Partition) -> Partition:
    same_system(first.system, second.system, 'join_partitions')
    return Partition.from_keys(first.system, list(zip(first.labels, second.labels, strict=True)))


def is_finer(first: Partition, second: Partition) -> bool:
    """Whether every block of ``first`` lies inside a block of ``second``."""
    same_system(first.system, second.system, 'is_finer')
    image: dict[int, int] = {}
    return all(
        image.setdefault(a, b) == b for a, b in zip(first.labels, second.labels, strict=True)
    )


def invariance_violation(partition: Partition) -> tuple[int, int] | None:
    """First ``(block, map index)`` whose image is not contained in a single block."""
    labels = partition.labels
    for index, perm in enumerate(partition.system.maps):
        for block, points in enumerate(partition.blocks):
            target = labels[perm(points[0])]
            if any(labels[perm(point)] != target for point in points[1:]):
                return block, index
    return None


def is_invariant(partition: Partition) -> bool:
    return invariance_violation(partition) is None


def require_invariant(partition: Partition) -> Partition:
    violation = invariance_violation(partition)
    if violation is not None:
        block, index = violation
        raise NonInvariantPartitionError(block=block, map_index=index)
    return partition


def c_factor_words(d: int) -> list[Word]:
    """``T_1`` followed by ``T_i T_1^{-1}`` for ``i = 2..d``."""
    return [unit_word(d, 0), *(difference_word(d, index) for index in range(1, d))]


def largest_C_factor(system: FiniteSystem) -> Partition:  # noqa: N802
    factors = [isotropy_partition(system, word) for word in c_factor_words(system.d)]
    result = reduce(join_partitions, factors)
    log.debug('Largest C-factor computed', points=system.n, blocks=result.size)
    return result


def separates_positive_points(partition: Partition) -> bool:
    positive = partition.positive_blocks()
    return positive == len(partition.system.positive)


def is_C_system(system: FiniteSystem) -> bool:  # noqa: N802
    return separates_positive_points(largest_C_factor(system))
