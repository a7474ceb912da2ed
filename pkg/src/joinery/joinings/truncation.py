import itertools
import math
from fractions import Fraction

import structlog
from attrs import define, field

from joinery.constant import DEFAULT_TRUNCATION_BOUND
from joinery.core.observable import Observable, generated_factor, is_measurable
from joinery.core.partition import Partition, is_invariant, same_system
from joinery.exact import ZERO as EXACT_ZERO
from joinery.exact import ExactComplex
from joinery.exceptions import (
    BoundExceededError,
    CouplingError,
    CouplingMismatchError,
    InvariantViolationError,
    ParameterError,
)
from joinery.joinings.coupling import Coupling, Point, validate_coupling

log: structlog.BoundLogger = structlog.get_logger(__name__)


@define(frozen=True)
class TruncationReport:
    coupling: Coupling = field(repr=False)
    k: int
    shift_invariant: bool
    spread_sq: Fraction
    single_spread_sq: Fraction
    conditional: Observable = field(repr=False)
    factor: Partition = field(repr=False)
    factor_invariant: bool
    conditional_measurable: bool


def _require_pair(lam: Coupling) -> None:
    if lam.k != 2:  # noqa: PLR2004
        raise CouplingMismatchError(reason=f'expected a coupling of two systems, got {lam.k}')
    try:
        validate_coupling(lam)
    except CouplingError as error:
        raise CouplingMismatchError(reason=error.reason) from error


def _fibers(lam: Coupling) -> dict[int, list[tuple[int, Fraction]]]:
    x = lam.components[0]
    fibers: dict[int, list[tuple[int, Fraction]]] = {}
    for (p, q), mass in lam.masses.items():
        fibers.setdefault(p, []).append((q, mass / x.weights[p]))
    return fibers


def conditional_on_first(lam: Coupling, g: Observable) -> Observable:
    """``E_lam[g(y) | x]`` as an observable on ``x``."""
    _require_pair(lam)
    x, y = lam.components
    same_system(y, g.system, 'conditional_on_first')
    values = g.exact_values('conditional_on_first')
    conditional = [EXACT_ZERO] * x.n
    for p, fiber in _fibers(lam).items():
        conditional[p] = sum((values[q] * share for q, share in fiber), EXACT_ZERO)
    return Observable.exact(x, conditional)


def _spread_sq(
    coupling: Coupling, values: tuple[ExactComplex, ...], center: tuple[ExactComplex, ...]
) -> Fraction:
    """Integral of ``|(1/k) sum_j g(q_j) - E[g|x](p)|^2`` over the truncation."""
    k = coupling.k - 1
    total = Fraction(0)
    for point, mass in coupling.masses.items():
        average = sum((values[q] for q in point[1:]), EXACT_ZERO) / k
        total += mass * (average - center[point[0]]).abs_sq()
    return total


def lambda_infinity_truncation(
    lam: Coupling, k: int, g: Observable, *, bound: int = DEFAULT_TRUNCATION_BOUND
) -> TruncationReport:
    """``k`` copies of ``y`` glued independently inside each fiber of ``x`` along ``lam``."""
    if k < 1:
        raise ParameterError(name='k', value=k)
    _require_pair(lam)

    x, y = lam.components
    fibers = _fibers(lam)
    size = sum(len(fiber) ** k for fiber in fibers.values())
    if size > bound:
        raise BoundExceededError(kind='truncation', size=size, bound=bound)

    masses: dict[Point, Fraction] = {}
    for p, fiber in fibers.items():
        for combo in itertools.product(fiber, repeat=k):
            point = (p, *(q for q, _ in combo))
            shares = (share for _, share in combo)
            masses[point] = x.weights[p] * math.prod(shares, start=Fraction(1))
    coupling = validate_coupling(Coupling((x, *(y,) * k), masses))

    shifted = {(p, *rest[1:], rest[0]): mass for (p, *rest), mass in coupling.masses.items()}
    shift_invariant = shifted == coupling.masses

    conditional = conditional_on_first(lam, g)
    values = g.exact_values('lambda_infinity_truncation')
    center = conditional.exact_values('lambda_infinity_truncation')
    spread = _spread_sq(coupling, values, center)
    single = _spread_sq(lam, values, center)
    if spread * k != single:
        raise InvariantViolationError(check=f'fiberwise spread at k={k} is not single spread / k')

    factor = generated_factor(x, [conditional])
    report = TruncationReport(
        coupling=coupling,
        k=k,
        shift_invariant=shift_invariant,
        spread_sq=spread,
        single_spread_sq=single,
        conditional=conditional,
        factor=factor,
        factor_invariant=is_invariant(factor),
        conditional_measurable=is_measurable(conditional, factor),
    )
    log.debug('Truncation built', k=k, support=len(coupling.masses), spread_sq=str(spread))
    return report
