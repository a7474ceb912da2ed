from collections.abc import Iterator, Sequence
from fractions import Fraction

from attrs import define

from joinery.core.system import FiniteSystem, Permutation, require_valid

MAX_MODULUS = 7

_CYCLIC_SHIFTS: tuple[tuple[int, ...], ...] = (
    (1,),
    (0, 1),
    (1, 1),
    (1, 2),
    (1, 2, 3),
)
_GRID_SHIFTS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((1, 0),),
    ((1, 2), (2, 2)),
    ((1, 0), (0, 1)),
    ((1, 1), (1, 2), (0, 1)),
)


@define(frozen=True)
class CorpusEntry:
    name: str
    system: FiniteSystem


def cyclic_system(m: int, shifts: Sequence[int]) -> FiniteSystem:
    """``Z_m`` with uniform weights and the translations ``x -> x + s``."""
    maps = [Permutation((x + s) % m for x in range(m)) for s in shifts]
    return require_valid(FiniteSystem([Fraction(1, m)] * m, maps))


def grid_point(m: int, x: int, y: int) -> int:
    return (x % m) * m + (y % m)


def torus_grid_system(m: int, shifts: Sequence[tuple[int, int]]) -> FiniteSystem:
    """``Z_m x Z_m`` with uniform weights; point ``(x, y)`` is stored at ``x * m + y``."""
    maps = [
        Permutation(grid_point(m, x + a, y + b) for x in range(m) for y in range(m))
        for a, b in shifts
    ]
    return require_valid(FiniteSystem([Fraction(1, m * m)] * (m * m), maps))


def x_coordinate(m: int) -> list[int]:
    return [point // m for point in range(m * m)]


def bundled_corpus(max_modulus: int = MAX_MODULUS) -> Iterator[CorpusEntry]:
    """Every cyclic and two-dimensional grid example up to ``Z_max_modulus``, ``d <= 3``."""
    for m in range(2, max_modulus + 1):
        for shifts in _CYCLIC_SHIFTS:
            yield CorpusEntry(f'Z{m}{list(shifts)}', cyclic_system(m, shifts))
        for grid_shifts in _GRID_SHIFTS:
            label = ','.join(f'({a},{b})' for a, b in grid_shifts)
            yield CorpusEntry(f'Z{m}xZ{m}[{label}]', torus_grid_system(m, grid_shifts))
