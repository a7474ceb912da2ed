import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

import structlog
from attrs import define, field

from joinery.core.factor import FactorMap
from joinery.core.observable import Observable
from joinery.core.partition import same_system
from joinery.core.system import FiniteSystem, Word, transform_word, unit_word
from joinery.exact import ONE, ExactComplex, exact_sum
from joinery.exceptions import CouplingError, CouplingMismatchError

log: structlog.BoundLogger = structlog.get_logger(__name__)

type Point = tuple[int, ...]
type SlotWords = tuple[Word, ...]


def _sparse(
    masses: Mapping[Point, Fraction] | Iterable[tuple[Point, Fraction]],
) -> dict[Point, Fraction]:
    items = masses.items() if isinstance(masses, Mapping) else masses
    return {point: Fraction(mass) for point, mass in sorted(items) if mass}


@define(frozen=True)
class Coupling:
    """Sparse exact measure on the product of ``components``."""

    components: tuple[FiniteSystem, ...] = field(converter=tuple, repr=False)
    masses: dict[Point, Fraction] = field(converter=_sparse)
    equivariances: tuple[SlotWords, ...] = field(default=(), converter=tuple)

    def __attrs_post_init__(self) -> None:
        sizes = [component.n for component in self.components]
        for point in self.masses:
            if len(point) != len(sizes) or any(
                not 0 <= p < size for p, size in zip(point, sizes, strict=False)
            ):
                raise CouplingMismatchError(reason=f'tuple {list(point)} is outside the product')

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def support(self) -> list[Point]:
        return list(self.masses)

    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def mass(self, point: Point) -> Fraction:
        return self.masses.get(point, Fraction(0))

    def marginal(self, slot: int) -> tuple[Fraction, ...]:
        masses = [Fraction(0)] * self.components[slot].n
        for point, mass in self.masses.items():
            masses[point[slot]] += mass
        return tuple(masses)

    def pushforward(self, words: Sequence[Word]) -> dict[Point, Fraction]:
        """Image of the measure under the product of one word per slot."""
        if len(words) != self.k:
            raise CouplingMismatchError(reason=f'{len(words)} words for {self.k} components')
        perms = [
            transform_word(component, word)
            for component, word in zip(self.components, words, strict=True)
        ]
        image: dict[Point, Fraction] = {}
        for point, mass in self.masses.items():
            moved = tuple(perm(p) for perm, p in zip(perms, point, strict=True))
            image[moved] = image.get(moved, Fraction(0)) + mass
        return dict(sorted(image.items()))

    def integrate(self, fs: Sequence[Observable]) -> ExactComplex:
        """Integral of ``f_1(t_1) ... f_k(t_k)``."""
        if len(fs) != self.k:
            raise CouplingMismatchError(reason=f'{len(fs)} observables for {self.k} components')
        values = []
        for component, f in zip(self.components, fs, strict=True):
            same_system(component, f.system, 'integrate')
            values.append(f.exact_values('integrate'))

        terms = []
        for point, mass in self.masses.items():
            term = ONE * mass
            for slot_values, p in zip(values, point, strict=True):
                term *= slot_values[p]
            terms.append(term)
        return exact_sum(terms)


@define(frozen=True)
class EquivarianceCheck:
    holds: bool
    witness: Point | None = None
    max_discrepancy: Fraction = Fraction(0)


def check_equivariance(coupling: Coupling, words: Sequence[Word]) -> EquivarianceCheck:
    image = coupling.pushforward(words)
    witness: Point | None = None
    worst = Fraction(0)
    for point in sorted(set(image) | set(coupling.masses)):
        discrepancy = abs(image.get(point, Fraction(0)) - coupling.mass(point))
        if discrepancy:
            if witness is None:
                witness = point
            worst = max(worst, discrepancy)
    return EquivarianceCheck(holds=witness is None, witness=witness, max_discrepancy=worst)


def diagonal_words(d: int, k: int, index: int) -> SlotWords:
    """``T_index`` in every one of ``k`` slots."""
    return (unit_word(d, index),) * k


def all_diagonal_words(components: Sequence[FiniteSystem]) -> tuple[SlotWords, ...]:
    ds = {component.d for component in components}
    if len(ds) != 1:
        return ()
    (d,) = ds
    return tuple(diagonal_words(d, len(components), index) for index in range(d))


def validate_coupling(coupling: Coupling) -> Coupling:
    negative = next((p for p, mass in coupling.masses.items() if mass < 0), None)
    if negative is not None:
        raise CouplingError(reason=f'negative mass at {list(negative)}')

    total = coupling.total()
    if total != 1:
        raise CouplingError(reason=f'total mass is {total}')

    for slot, component in enumerate(coupling.components):
        if coupling.marginal(slot) != component.weights:
            raise CouplingError(reason=f'marginal {slot} differs from the component weights')

    for words in coupling.equivariances:
        if coupling.pushforward(words) != coupling.masses:
            described = [list(word) for word in words]
            raise CouplingError(reason=f'declared invariance under {described} fails')

    return coupling


def product_coupling(systems: Sequence[FiniteSystem]) -> Coupling:
    positive = [system.positive for system in systems]
    masses = {
        point: math.prod(
            (system.weights[p] for system, p in zip(systems, point, strict=True)), start=Fraction(1)
        )
        for point in itertools.product(*positive)
    }
    coupling = Coupling(systems, masses, all_diagonal_words(systems))
    log.debug('Product coupling built', components=len(systems), support=len(coupling.masses))
    return validate_coupling(coupling)


def diagonal_coupling(system: FiniteSystem, k: int) -> Coupling:
    masses = {(point,) * k: system.weights[point] for point in system.positive}
    return validate_coupling(Coupling((system,) * k, masses, all_diagonal_words([system] * k)))


def graph_coupling(factor: FactorMap) -> Coupling:
    """Coupling of ``source`` and ``target`` carried by the graph of the factor map."""
    source = factor.source
    masses = {(point, factor(point)): source.weights[point] for point in source.positive}
    components = (factor.source, factor.target)
    return validate_coupling(Coupling(components, masses, all_diagonal_words(components)))
