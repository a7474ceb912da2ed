import math
from collections.abc import Iterable, Sequence

import numpy as np
from attrs import define, field

from joinery.exceptions import ArityError, ParameterError

type Frequency = tuple[int, ...]
type Term = tuple[Frequency, complex]


def _reduced(rotations: Iterable[Iterable[float]]) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(c) % 1.0 for c in rotation) for rotation in rotations)


def _multiples(
    multiples: Iterable[Iterable[int]] | None,
) -> tuple[tuple[int, ...], ...] | None:
    if multiples is None:
        return None
    return tuple(tuple(int(c) for c in row) for row in multiples)


@define(frozen=True)
class TorusSystem:
    """``d`` translations of ``T^k``. When ``multiples`` is set, rotation ``j`` is
    ``multiples[j] * alpha`` and phases are computed in integers first."""

    k: int
    rotations: tuple[tuple[float, ...], ...] = field(converter=_reduced)
    alpha: float | None = None
    multiples: tuple[tuple[int, ...], ...] | None = field(default=None, converter=_multiples)

    def __attrs_post_init__(self) -> None:
        if self.k < 1:
            raise ParameterError(name='k', value=self.k)
        for rotation in self.rotations:
            if len(rotation) != self.k:
                raise ArityError(expected=self.k, received=len(rotation))
        if self.multiples is not None and (
            self.alpha is None or len(self.multiples) != len(self.rotations)
        ):
            raise ArityError(expected=len(self.rotations), received=len(self.multiples))

    @classmethod
    def from_multiples(cls, alpha: float, multiples: Sequence[Sequence[int]]) -> 'TorusSystem':
        rotations = [[c * alpha for c in row] for row in multiples]
        return cls(len(multiples[0]), rotations, alpha, multiples)

    @property
    def d(self) -> int:
        return len(self.rotations)

    def phase(self, frequency: Frequency, j: int) -> int | None:
        """``<m, multiples_j>`` when the system carries integer multiples."""
        if self.multiples is None:
            return None
        return sum(m * c for m, c in zip(frequency, self.multiples[j], strict=True))

    def angle(self, frequency: Frequency, j: int, power: int = 1) -> float:
        """``power * <m, rotation_j>`` reduced mod 1."""
        phase = self.phase(frequency, j)
        if phase is not None and self.alpha is not None:
            return (power * phase * self.alpha) % 1.0
        dot = math.fsum(m * c for m, c in zip(frequency, self.rotations[j], strict=True))
        return (power * dot) % 1.0


def _terms(terms: Iterable[tuple[Sequence[int], complex]]) -> tuple[Term, ...]:
    return tuple((tuple(int(m) for m in freq), complex(coef)) for freq, coef in terms)


@define(frozen=True)
class FourierObservable:
    terms: tuple[Term, ...] = field(converter=_terms)

    def __attrs_post_init__(self) -> None:
        if not self.terms:
            raise ParameterError(name='terms', value=0, requirement='nonempty')
        frequencies = self.frequencies
        if len(set(frequencies)) != len(frequencies):
            raise ParameterError(name='frequencies', value=frequencies, requirement='distinct')
        if any(len(freq) != self.k for freq in frequencies):
            raise ArityError(expected=self.k, received=min(len(freq) for freq in frequencies))

    @classmethod
    def character(cls, frequency: Sequence[int], coefficient: complex = 1) -> 'FourierObservable':
        """``coefficient * e^{2 pi i <m, z>}``."""
        return cls([(frequency, coefficient)])

    @classmethod
    def constant(cls, k: int, value: complex = 1) -> 'FourierObservable':
        return cls([((0,) * k, value)])

    @classmethod
    def merged(cls, terms: Iterable[tuple[Frequency, complex]], k: int) -> 'FourierObservable':
        """Sums coefficients of repeated frequencies; the zero polynomial keeps one zero term."""
        coefficients: dict[Frequency, complex] = {}
        for freq, coef in terms:
            coefficients[freq] = coefficients.get(freq, 0j) + coef
        if not coefficients:
            coefficients[(0,) * k] = 0j
        return cls(sorted(coefficients.items()))

    @property
    def k(self) -> int:
        return len(self.terms[0][0])

    @property
    def frequencies(self) -> list[Frequency]:
        return [freq for freq, _ in self.terms]

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([coef for _, coef in self.terms], dtype=np.complex128)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at ``points`` of shape ``(..., k)``."""
        points = np.asarray(points, dtype=np.float64)
        freqs = np.array(self.frequencies, dtype=np.float64)
        phases = np.tensordot(points, freqs.T, axes=1)
        return np.exp(2j * np.pi * phases) @ self.coefficients

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coefficients) ** 2)))


def multiplier(theta: float) -> complex:
    return complex(np.exp(2j * np.pi * theta)) if theta else 1 + 0j


def rotate_observable(
    f: FourierObservable, system: TorusSystem, j: int, power: int = 1
) -> FourierObservable:
    """``f o T_j^power``: frequency ``m`` picks up ``e^{2 pi i power <m, rotation_j>}``."""
    if f.k != system.k:
        raise ArityError(expected=system.k, received=f.k)
    return FourierObservable(
        (freq, coef * multiplier(system.angle(freq, j, power))) for freq, coef in f.terms
    )


def grid_points(k: int, q: int) -> np.ndarray:
    """The uniform grid ``(Z/q)^k / q`` as an array of shape ``(q, ..., q, k)``."""
    if q < 2:  # noqa: PLR2004
        raise ParameterError(name='Q', value=q, requirement='at least 2')
    axes = np.meshgrid(*([np.arange(q) / q] * k), indexing='ij')
    return np.stack(axes, axis=-1)
