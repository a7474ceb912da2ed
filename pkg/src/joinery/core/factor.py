from collections.abc import Iterable
from fractions import Fraction

import structlog
from attrs import define, field

from joinery.core.observable import Observable
from joinery.core.partition import Partition, require_invariant, same_system
from joinery.core.system import FiniteSystem, Permutation, require_valid
from joinery.exceptions import FactorMapError

log: structlog.BoundLogger = structlog.get_logger(__name__)


@define(frozen=True)
class FactorMap:
    """Equivariant measure-preserving map ``source -> target``; checked on construction."""

    source: FiniteSystem = field(repr=False)
    target: FiniteSystem = field(repr=False)
    assignment: tuple[int, ...] = field(converter=tuple)

    def __attrs_post_init__(self) -> None:
        source, target = self.source, self.target
        if len(self.assignment) != source.n:
            raise FactorMapError(reason=f'{len(self.assignment)} images for {source.n} points')
        if any(not 0 <= image < target.n for image in self.assignment):
            raise FactorMapError(reason='image outside the target system')
        if source.d != target.d:
            raise FactorMapError(reason=f'{source.d} source maps against {target.d} target maps')

        if self.pushforward() != target.weights:
            raise FactorMapError(reason='pushforward of the source weights differs from target')

        for index, (t, s) in enumerate(zip(source.maps, target.maps, strict=True)):
            point = next(
                (
                    p
                    for p in source.positive
                    if self.assignment[t(p)] != s(self.assignment[p])
                ),
                None,
            )
            if point is not None:
                raise FactorMapError(reason=f'map {index} is not intertwined at point {point}')

    def __call__(self, point: int) -> int:
        return self.assignment[point]

    def pushforward(self, weights: Iterable[Fraction] | None = None) -> tuple[Fraction, ...]:
        masses = [Fraction(0)] * self.target.n
        weights = self.source.weights if weights is None else weights
        for image, weight in zip(self.assignment, weights, strict=True):
            masses[image] += weight
        return tuple(masses)

    def partition(self) -> Partition:
        """The sub-sigma-algebra of the source pulled back from the target."""
        return Partition.from_keys(self.source, self.assignment)

    def pull(self, g: Observable) -> Observable:
        """``g o self``, an observable on the source."""
        same_system(self.target, g.system, 'pull')
        return Observable(self.source, (g.values[image] for image in self.assignment), g.mode)

    def then(self, other: 'FactorMap') -> 'FactorMap':
        same_system(self.target, other.source, 'factor composition')
        return FactorMap(self.source, other.target, (other(image) for image in self.assignment))


def identity_factor(system: FiniteSystem) -> FactorMap:
    return FactorMap(system, system, range(system.n))


def factor_quotient(system: FiniteSystem, partition: Partition) -> tuple[FiniteSystem, FactorMap]:
    """Quotient by an invariant partition: blocks become points with the induced maps."""
    same_system(system, partition.system, 'factor_quotient')
    require_invariant(partition)

    maps = [
        Permutation(partition.labels[perm(block[0])] for block in partition.blocks)
        for perm in system.maps
    ]
    quotient = require_valid(FiniteSystem(partition.block_mass, maps))
    projection = FactorMap(system, quotient, partition.labels)

    log.debug('Quotient built', points=system.n, blocks=quotient.n)
    return quotient, projection
