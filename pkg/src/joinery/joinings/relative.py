from fractions import Fraction

import structlog
from attrs import define

from joinery.core.factor import FactorMap, factor_quotient
from joinery.core.observable import (
    Observable,
    compose,
    conditional_expectation,
    exact_integral,
)
from joinery.core.partition import Partition, isotropy_partition, require_invariant, same_system
from joinery.core.system import FiniteSystem, difference_word
from joinery.exact import ExactComplex
from joinery.exceptions import FactorMismatchError, MapCountError
from joinery.joinings.coupling import Coupling, all_diagonal_words, validate_coupling

log: structlog.BoundLogger = structlog.get_logger(__name__)


def rel_indep_over_factor(
    x: FiniteSystem, y: FiniteSystem, fx: FactorMap, fy: FactorMap
) -> Coupling:
    """Glue ``x`` and ``y`` along their common factor, independently inside each fiber."""
    same_system(fx.source, x, 'rel_indep_over_factor')
    same_system(fy.source, y, 'rel_indep_over_factor')
    if fx.target is not fy.target and fx.target != fy.target:
        raise FactorMismatchError

    rho = fx.target.weights
    fibers: dict[int, list[int]] = {}
    for q in y.positive:
        fibers.setdefault(fy(q), []).append(q)

    masses: dict[tuple[int, int], Fraction] = {}
    for p in x.positive:
        c = fx(p)
        for q in fibers.get(c, []):
            masses[p, q] = x.weights[p] * y.weights[q] / rho[c]

    coupling = validate_coupling(Coupling((x, y), masses, all_diagonal_words((x, y))))
    log.debug('Relatively independent joining built', support=len(coupling.masses))
    return coupling


def rel_indep_self_joining(x: FiniteSystem, partition: Partition) -> Coupling:
    same_system(x, partition.system, 'rel_indep_self_joining')
    require_invariant(partition)
    _, projection = factor_quotient(x, partition)
    return rel_indep_over_factor(x, x, projection, projection)


@define(frozen=True)
class InvarianceChain:
    """Successive integrals of the computation showing that the relatively independent
    self-joining over the isotropy factor of ``T_2 T_1^{-1}`` is ``T_1 x T_2`` invariant."""

    values: tuple[ExactComplex, ...]
    commutes_with_maps: bool
    maps_agree_on_factor: bool

    @property
    def holds(self) -> bool:
        first = self.values[0]
        return (
            self.commutes_with_maps
            and self.maps_agree_on_factor
            and all(value == first for value in self.values)
        )


def invariance_chain(x: FiniteSystem, phi1: Observable, phi2: Observable) -> InvarianceChain:
    if x.d < 2:  # noqa: PLR2004
        raise MapCountError(operation='invariance_chain', required=2, received=x.d)
    same_system(x, phi1.system, 'invariance_chain')
    same_system(x, phi2.system, 'invariance_chain')

    t1, t2 = x.maps[0], x.maps[1]
    factor = isotropy_partition(x, difference_word(x.d, 1))
    joining = rel_indep_self_joining(x, factor)

    def project(f: Observable) -> Observable:
        return conditional_expectation(f, factor)

    values = (
        joining.integrate([compose(phi1, t1), compose(phi2, t2)]),
        exact_integral(project(compose(phi1, t1)) * project(compose(phi2, t2))),
        exact_integral(compose(project(phi1), t1) * compose(project(phi2), t2)),
        exact_integral(compose(project(phi1), t2) * compose(project(phi2), t2)),
        exact_integral(project(phi1) * project(phi2)),
        joining.integrate([phi1, phi2]),
    )

    commutes = all(
        project(compose(phi, t)) == compose(project(phi), t)
        for phi in (phi1, phi2)
        for t in x.maps
    )
    agree = all(compose(project(phi), t1) == compose(project(phi), t2) for phi in (phi1, phi2))

    chain = InvarianceChain(values, commutes, agree)
    log.debug('Invariance chain evaluated', holds=chain.holds)
    return chain
