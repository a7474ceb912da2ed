from collections.abc import Sequence
from fractions import Fraction

import structlog
from attrs import define, field

from ratlp.exceptions import InfeasibleError, ShapeError, UnboundedError

log: structlog.BoundLogger = structlog.get_logger(__name__)

ZERO = Fraction(0)


@define(frozen=True)
class Solution:
    value: Fraction
    x: tuple[Fraction, ...]
    basis: tuple[int, ...]
    pivots: int


@define
class Tableau:
    """Equality-form tableau ``rows[i] = [a_i0, ..., a_ik, b_i]`` with one basic column per row."""

    rows: list[list[Fraction]]
    basis: list[int]
    pivots: int = field(default=0, init=False)

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, row: int, column: int) -> None:
        pivot_row = self.rows[row]
        scale = pivot_row[column]
        if scale != 1:
            pivot_row = [value / scale for value in pivot_row]
            self.rows[row] = pivot_row

        for index, other in enumerate(self.rows):
            if index == row:
                continue
            factor = other[column]
            if factor:
                self.rows[index] = [a - factor * b for a, b in zip(other, pivot_row, strict=True)]

        self.basis[row] = column
        self.pivots += 1

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * row[-1] for b, row in zip(self.basis, self.rows, strict=True)), ZERO)

    def reduced_cost(self, cost: Sequence[Fraction], column: int) -> Fraction:
        basic = sum(
            (cost[b] * row[column] for b, row in zip(self.basis, self.rows, strict=True)), ZERO
        )
        return cost[column] - basic

    def optimize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> None:
        # Bland's rule: lowest entering index, ratio ties broken by lowest leaving basic index.
        while True:
            in_basis = set(self.basis)
            entering = next(
                (
                    column
                    for column in range(self.width)
                    if allowed[column]
                    and column not in in_basis
                    and self.reduced_cost(cost, column) > 0
                ),
                None,
            )
            if entering is None:
                return

            candidates = [
                (row[-1] / row[entering], self.basis[index], index)
                for index, row in enumerate(self.rows)
                if row[entering] > 0
            ]
            if not candidates:
                raise UnboundedError(column=entering)

            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def values(self, size: int) -> tuple[Fraction, ...]:
        x = [ZERO] * size
        for b, row in zip(self.basis, self.rows, strict=True):
            if b < size:
                x[b] = row[-1]
        return tuple(x)


def _phase_one(a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]) -> Tableau:
    m = len(a_eq)
    n = len(a_eq[0]) if m else 0
    rows: list[list[Fraction]] = []
    for i, (coefficients, rhs) in enumerate(zip(a_eq, b_eq, strict=True)):
        sign = -1 if rhs < 0 else 1
        artificial = [Fraction(int(i == j)) for j in range(m)]
        scaled = [sign * Fraction(a) for a in coefficients]
        rows.append([*scaled, *artificial, sign * Fraction(rhs)])

    tableau = Tableau(rows=rows, basis=[n + i for i in range(m)])
    cost = [ZERO] * n + [Fraction(-1)] * m
    tableau.optimize(cost, [True] * (n + m))

    residual = tableau.objective(cost)
    if residual < 0:
        raise InfeasibleError(residual=-residual)

    redundant: list[int] = []
    for index, basic in enumerate(tableau.basis):
        if basic < n:
            continue
        row = tableau.rows[index]
        column = next((j for j in range(n) if row[j] != 0), None)
        if column is None:
            redundant.append(index)
        else:
            tableau.pivot(index, column)

    for index in reversed(redundant):
        del tableau.rows[index]
        del tableau.basis[index]

    if redundant:
        log.debug('Dropped redundant equality rows', count=len(redundant))

    return tableau


def maximize(
    cost: Sequence[Fraction], a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]
) -> Solution:
    """Maximize ``cost . x`` subject to ``a_eq x = b_eq`` and ``x >= 0`` in exact arithmetic."""
    if len(a_eq) != len(b_eq):
        raise ShapeError(rows=len(a_eq), columns=len(b_eq))

    n = len(cost)
    if not a_eq:
        column = next((j for j, c in enumerate(cost) if c > 0), None)
        if column is not None:
            raise UnboundedError(column=column)
        return Solution(value=ZERO, x=(ZERO,) * n, basis=(), pivots=0)

    tableau = _phase_one(a_eq, b_eq)
    extended = [Fraction(c) for c in cost] + [ZERO] * (tableau.width - n)
    allowed = [column < n for column in range(tableau.width)]
    tableau.optimize(extended, allowed)

    solution = Solution(
        value=tableau.objective(extended),
        x=tableau.values(n),
        basis=tuple(tableau.basis),
        pivots=tableau.pivots,
    )
    log.debug('Simplex finished', value=str(solution.value), pivots=solution.pivots)
    return solution


def minimize(
    cost: Sequence[Fraction], a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]
) -> Solution:
    solution = maximize([-Fraction(c) for c in cost], a_eq, b_eq)
    return Solution(
        value=-solution.value, x=solution.x, basis=solution.basis, pivots=solution.pivots
    )
