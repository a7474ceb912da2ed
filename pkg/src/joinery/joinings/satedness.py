from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import cached_property

import structlog
from attrs import define, field
from ratlp.exceptions import InfeasibleError, UnboundedError
from ratlp.simplex import maximize
from ratlp.vertices import enumerate_vertices

from joinery.constant import DEFAULT_LP_BOUND, DEFAULT_WORKERS
from joinery.core.factor import FactorMap
from joinery.core.observable import Observable, conditional_expectation, indicator
from joinery.core.orbits import find_orbits
from joinery.core.partition import (
    is_C_system,
    is_finer,
    largest_C_factor,
    same_system,
)
from joinery.core.system import FiniteSystem
from joinery.exact import ZERO as EXACT_ZERO
from joinery.exceptions import (
    BoundExceededError,
    CouplingError,
    CouplingMismatchError,
    InvariantViolationError,
    NotCSystemError,
)
from joinery.joinings.coupling import (
    Coupling,
    Point,
    all_diagonal_words,
    check_equivariance,
    validate_coupling,
)
from joinery.joinings.relative import rel_indep_over_factor

log: structlog.BoundLogger = structlog.get_logger(__name__)

ZERO = Fraction(0)


def recentred(f: Observable) -> Observable:
    """``f - E[f | X_C]``."""
    return f - conditional_expectation(f, largest_C_factor(f.system))


def _require_c_system(y: FiniteSystem) -> None:
    if not is_C_system(y):
        raise NotCSystemError(role='joined')


def _require_joining(x: FiniteSystem, y: FiniteSystem, lam: Coupling) -> None:
    if lam.k != 2:  # noqa: PLR2004
        raise CouplingMismatchError(reason=f'expected a coupling of two systems, got {lam.k}')
    same_system(lam.components[0], x, 'satedness')
    same_system(lam.components[1], y, 'satedness')
    if x.d != y.d:
        raise CouplingMismatchError(reason=f'{x.d} maps against {y.d} maps')
    if lam.marginal(0) != x.weights or lam.marginal(1) != y.weights:
        raise CouplingMismatchError(reason='marginals differ from the system weights')
    for words in all_diagonal_words((x, y)):
        if not check_equivariance(lam, words).holds:
            raise CouplingError(reason=f'not invariant under {[list(w) for w in words]}')


@define(frozen=True)
class Certificate:
    residual_sq: Fraction
    witness: int | None = None

    @property
    def vanishes(self) -> bool:
        return self.residual_sq == 0


def satedness_certificate(
    x: FiniteSystem, y: FiniteSystem, lam: Coupling, f: Observable
) -> Certificate:
    """Largest squared correlation ``|E_lam[(f - E[f|X_C])(x) 1_q(y)]|^2`` over points ``q``."""
    _require_c_system(y)
    _require_joining(x, y, lam)
    same_system(x, f.system, 'satedness_certificate')

    h = recentred(f).exact_values('satedness_certificate')
    sums = [EXACT_ZERO] * y.n
    for (p, q), mass in lam.masses.items():
        sums[q] += h[p] * mass

    residual, witness = ZERO, None
    for q, total in enumerate(sums):
        if total.abs_sq() > residual:
            residual, witness = total.abs_sq(), q

    log.debug('Satedness certificate evaluated', residual_sq=str(residual), witness=witness)
    return Certificate(residual, witness)


@define
class JoiningLP:
    """Invariant couplings of ``x`` and ``y``: one variable per orbit of the product action,
    holding the orbit's total mass, constrained by both marginals."""

    x: FiniteSystem = field(repr=False)
    y: FiniteSystem = field(repr=False)

    @cached_property
    def orbits(self) -> list[list[Point]]:
        space = [(p, q) for p in range(self.x.n) for q in range(self.y.n)]
        generators = [
            lambda point, s=s, t=t: (s(point[0]), t(point[1]))
            for s, t in zip(self.x.maps, self.y.maps, strict=True)
        ]
        return find_orbits(space, generators)

    @cached_property
    def constraints(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        rows: list[list[Fraction]] = []
        for slot, size in enumerate((self.x.n, self.y.n)):
            rows.extend(
                [
                    Fraction(sum(1 for t in orbit if t[slot] == point), len(orbit))
                    for orbit in self.orbits
                ]
                for point in range(size)
            )
        rhs = [*self.x.weights, *self.y.weights]
        return rows, rhs

    def cost(self, h: Sequence[Fraction], q: int) -> list[Fraction]:
        """Objective for ``E_lam[h(x) 1_q(y)]`` in orbit-mass variables."""
        return [
            sum((h[p] for p, r in orbit if r == q), ZERO) / len(orbit) for orbit in self.orbits
        ]

    def coupling(self, values: Sequence[Fraction]) -> Coupling:
        masses = {
            point: value / len(orbit)
            for orbit, value in zip(self.orbits, values, strict=True)
            for point in orbit
        }
        coupling = Coupling((self.x, self.y), masses, all_diagonal_words((self.x, self.y)))
        return validate_coupling(coupling)

    def solve(self, cost: Sequence[Fraction]) -> tuple[Fraction, Coupling, int]:
        a_eq, b_eq = self.constraints
        try:
            solution = maximize(cost, a_eq, b_eq)
        except (InfeasibleError, UnboundedError) as error:
            raise InvariantViolationError(check=f'joining program: {error}') from error
        return solution.value, self.coupling(solution.x), solution.pivots

    def vertices(self) -> list[Coupling]:
        a_eq, b_eq = self.constraints
        return [self.coupling(x) for x in enumerate_vertices(a_eq, b_eq)]


@define(frozen=True)
class Witness:
    point: int
    target: int
    sign: int
    value: Fraction
    coupling: Coupling = field(repr=False)


@define(frozen=True)
class FalsifierReport:
    witness: Witness | None
    optimal_value: Fraction
    lp_pivots: int
    programs: int


def satedness_falsifier(
    x: FiniteSystem,
    y: FiniteSystem,
    *,
    bound: int = DEFAULT_LP_BOUND,
    workers: int = DEFAULT_WORKERS,
) -> FalsifierReport:
    """Search the invariant couplings of ``x`` and the C-system ``y`` for one that correlates a
    recentred point indicator of ``x`` with a point indicator of ``y``."""
    _require_c_system(y)
    if x.d != y.d:
        raise CouplingMismatchError(reason=f'{x.d} maps against {y.d} maps')
    size = x.n * y.n
    if size > bound:
        raise BoundExceededError(kind='joining program', size=size, bound=bound)

    program = JoiningLP(x, y)
    tasks: list[tuple[int, int, int, list[Fraction]]] = []
    for p in range(x.n):
        h = recentred(indicator(x, [p])).exact_values('satedness_falsifier')
        if all(not value for value in h):
            continue
        real = [value.re for value in h]
        for q in range(y.n):
            cost = program.cost(real, q)
            if any(cost):
                tasks.extend((p, q, sign, [sign * c for c in cost]) for sign in (1, -1))

    def run(task: tuple[int, int, int, list[Fraction]]) -> tuple[Fraction, Coupling, int]:
        return program.solve(task[3])

    rows, _ = program.constraints
    log.info('Falsifier started', tuples=size, orbits=len(program.orbits), rows=len(rows))
    pivots = 0
    best = ZERO
    witness: Witness | None = None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for (p, q, sign, _), (value, coupling, used) in zip(
            tasks, pool.map(run, tasks), strict=True
        ):
            pivots += used
            best = max(best, value)
            if value > 0 and witness is None:
                witness = Witness(p, q, sign, value, coupling)

    report = FalsifierReport(witness, witness.value if witness else best, pivots, len(tasks))
    log.info('Falsifier finished', found=witness is not None, pivots=pivots)
    return report


@define(frozen=True)
class Characterization:
    inside_c_factor: bool
    residual_sq: Fraction
    witness: int | None = None


def characterization_check(
    x: FiniteSystem, fmap: FactorMap, y: FiniteSystem, ymap: FactorMap
) -> Characterization:
    """Whether the common factor of ``x`` and the C-system ``y`` lies inside ``X_C``; when it
    does not, the relatively independent joining over it correlates with ``y``."""
    _require_c_system(y)
    joining = rel_indep_over_factor(x, y, fmap, ymap)
    inside = is_finer(largest_C_factor(x), fmap.partition())

    residual, witness = ZERO, None
    for p in x.positive:
        certificate = satedness_certificate(x, y, joining, indicator(x, [p]))
        if certificate.residual_sq > residual:
            residual, witness = certificate.residual_sq, p

    if inside != (residual == 0):
        raise InvariantViolationError(check='factor containment disagrees with the certificate')
    return Characterization(inside, residual, witness)
