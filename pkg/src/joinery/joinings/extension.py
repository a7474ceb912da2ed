import structlog
from attrs import define, field

from joinery.core.factor import FactorMap
from joinery.core.system import FiniteSystem, Permutation, require_valid
from joinery.exceptions import FactorMismatchError
from joinery.joinings.coupling import Coupling, Point
from joinery.joinings.relative import rel_indep_over_factor

log: structlog.BoundLogger = structlog.get_logger(__name__)


@define(frozen=True)
class Extension:
    """``Z``, the support of the relatively independent joining, with its two projections."""

    system: FiniteSystem = field(repr=False)
    points: tuple[Point, ...]
    to_x: FactorMap = field(repr=False)
    to_y: FactorMap = field(repr=False)
    joining: Coupling = field(repr=False)


def sated_extension_step(
    x: FiniteSystem, fmap: FactorMap, y: FiniteSystem, ymap: FactorMap
) -> Extension:
    if fmap.pushforward() != ymap.pushforward():
        raise FactorMismatchError

    joining = rel_indep_over_factor(x, y, fmap, ymap)
    points = tuple(joining.support)
    index = {point: position for position, point in enumerate(points)}
    maps = [
        Permutation(index[s(p), t(q)] for p, q in points)
        for s, t in zip(x.maps, y.maps, strict=True)
    ]

    system = require_valid(FiniteSystem([joining.masses[point] for point in points], maps))
    to_x = FactorMap(system, x, [p for p, _ in points])
    to_y = FactorMap(system, y, [q for _, q in points])

    log.debug('Extension built', points=system.n, source=x.n, joined=y.n)
    return Extension(system, points, to_x, to_y, joining)
