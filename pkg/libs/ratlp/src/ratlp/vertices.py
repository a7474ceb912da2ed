import itertools
import math
from collections.abc import Sequence
from fractions import Fraction

import structlog

from ratlp.exceptions import InfeasibleError, ShapeError, VertexLimitError
from ratlp.simplex import Solution

log: structlog.BoundLogger = structlog.get_logger(__name__)

DEFAULT_VARIABLE_LIMIT = 64
DEFAULT_BASIS_LIMIT = 250_000


def row_reduce(
    a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Reduced row echelon form of ``[a_eq | b_eq]`` with zero rows removed."""
    rows = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in zip(a_eq, b_eq, strict=True)]
    width = len(rows[0]) - 1 if rows else 0
    rank = 0
    for column in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][column] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        scale = rows[rank][column]
        rows[rank] = [value / scale for value in rows[rank]]
        for i, other in enumerate(rows):
            if i != rank and other[column] != 0:
                factor = other[column]
                rows[i] = [a - factor * b for a, b in zip(other, rows[rank], strict=True)]
        rank += 1

    for row in rows[rank:]:
        if row[-1] != 0:
            raise InfeasibleError(residual=row[-1])

    kept = rows[:rank]
    return [row[:-1] for row in kept], [row[-1] for row in kept]


def solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    size = len(matrix)
    rows = [[*row, b] for row, b in zip(matrix, rhs, strict=True)]
    for column in range(size):
        pivot = next((i for i in range(column, size) if rows[i][column] != 0), None)
        if pivot is None:
            return None
        rows[column], rows[pivot] = rows[pivot], rows[column]
        scale = rows[column][column]
        rows[column] = [value / scale for value in rows[column]]
        for i in range(size):
            if i != column and rows[i][column] != 0:
                factor = rows[i][column]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[column], strict=True)]
    return [row[-1] for row in rows]


def enumerate_vertices(
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
    *,
    variable_limit: int = DEFAULT_VARIABLE_LIMIT,
    basis_limit: int = DEFAULT_BASIS_LIMIT,
) -> list[tuple[Fraction, ...]]:
    """Every basic feasible solution of ``a_eq x = b_eq, x >= 0``, without duplicates."""
    if len(a_eq) != len(b_eq):
        raise ShapeError(rows=len(a_eq), columns=len(b_eq))

    n = len(a_eq[0]) if a_eq else 0
    if n > variable_limit:
        raise VertexLimitError(kind='variables', size=n, limit=variable_limit)

    matrix, rhs = row_reduce(a_eq, b_eq)
    rank = len(matrix)
    bases = math.comb(n, rank)
    if bases > basis_limit:
        raise VertexLimitError(kind='candidate bases', size=bases, limit=basis_limit)

    found: dict[tuple[Fraction, ...], None] = {}
    for columns in itertools.combinations(range(n), rank):
        square = [[row[j] for j in columns] for row in matrix]
        basic = solve_square(square, rhs)
        if basic is None or any(value < 0 for value in basic):
            continue
        x = [Fraction(0)] * n
        for j, value in zip(columns, basic, strict=True):
            x[j] = value
        found.setdefault(tuple(x))

    log.debug('Enumerated vertices', variables=n, rank=rank, vertices=len(found))
    return list(found)


def _dot(cost: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((c * v for c, v in zip(cost, x, strict=True)), Fraction(0))


def maximize_by_vertices(
    cost: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
    *,
    variable_limit: int = DEFAULT_VARIABLE_LIMIT,
) -> Solution:
    vertices = enumerate_vertices(a_eq, b_eq, variable_limit=variable_limit)
    if not vertices:
        raise InfeasibleError(residual='no vertex')

    best = max(vertices, key=lambda x: _dot(cost, x))
    value = _dot(cost, best)
    basis = tuple(j for j, v in enumerate(best) if v != 0)
    return Solution(value=value, x=best, basis=basis, pivots=0)
