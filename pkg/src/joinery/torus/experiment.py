import itertools
import math
from collections.abc import Sequence

import numpy as np
import structlog
from attrs import define, field

from joinery.constant import (
    DEFAULT_ALPHA,
    DEFAULT_TORUS_FREQUENCIES,
    DEFAULT_TORUS_GRID,
    DEFAULT_TORUS_TOLERANCE,
    DEFAULT_WEYL_DIRECT_LIMIT,
)
from joinery.core.corpus import torus_grid_system, x_coordinate
from joinery.core.factor import factor_quotient
from joinery.core.partition import Partition, c_factor_words, is_C_system, largest_C_factor
from joinery.exceptions import (
    ArityError,
    InvariantViolationError,
    ParameterError,
    ResonanceError,
    ToleranceError,
)
from joinery.torus.system import (
    FourierObservable,
    Frequency,
    TorusSystem,
    grid_points,
    rotate_observable,
)
from joinery.torus.weyl import (
    geometric_bound,
    is_resonant,
    required_length,
    weyl_average,
    weyl_sum_at_angle,
)

log: structlog.BoundLogger = structlog.get_logger(__name__)

ANNEXB_MULTIPLES = ((1, 2), (2, 2))
RESTRICTED_MULTIPLES = ((2,), (4,))
MIRROR_MODULUS = 5
VERDICT = 'factor of a C-system that is not a C-system'
FACTOR_FREQUENCY = (2, 0)


@define(frozen=True)
class TorusAverage:
    length: int
    grid: int
    average: FourierObservable = field(repr=False)
    values: np.ndarray = field(repr=False, eq=False)
    l2_grid: float
    l2_exact: float
    grid_exact: bool
    cauchy_increment: float
    decay_bound: float | None


def _total_angle(system: TorusSystem, frequencies: Sequence[Frequency]) -> float:
    phases = [system.phase(freq, j) for j, freq in enumerate(frequencies)]
    if system.alpha is not None and all(phase is not None for phase in phases):
        return (sum(phase for phase in phases if phase is not None) * system.alpha) % 1.0
    return math.fsum(system.angle(freq, j) for j, freq in enumerate(frequencies)) % 1.0


def _product_terms(
    system: TorusSystem, fs: Sequence[FourierObservable]
) -> list[tuple[Frequency, complex, float]]:
    """Terms of ``prod_i f_i(z + n rot_i)``: frequency, coefficient and phase per step."""
    terms = []
    for combo in itertools.product(*(f.terms for f in fs)):
        frequencies = [freq for freq, _ in combo]
        total = tuple(int(sum(column)) for column in zip(*frequencies, strict=True))
        coefficient = complex(np.prod([coef for _, coef in combo]))
        terms.append((total, coefficient, _total_angle(system, frequencies)))
    return terms


def _averaged(
    terms: Sequence[tuple[Frequency, complex, float]], k: int, length: int, direct_limit: int
) -> FourierObservable:
    averaged = [
        (freq, coef * weyl_average(theta, length, direct_limit=direct_limit))
        for freq, coef, theta in terms
    ]
    return FourierObservable.merged(averaged, k)


def torus_multiple_average(
    system: TorusSystem,
    fs: Sequence[FourierObservable],
    length: int,
    *,
    grid: int = DEFAULT_TORUS_GRID,
    direct_limit: int = DEFAULT_WEYL_DIRECT_LIMIT,
) -> TorusAverage:
    """``(1/N) sum_{n=1..N} prod_i f_i(z + n rot_i)`` computed on frequencies, then sampled
    on the ``Q^k`` grid."""
    if len(fs) != system.d:
        raise ArityError(expected=system.d, received=len(fs))
    for f in fs:
        if f.k != system.k:
            raise ArityError(expected=system.k, received=f.k)
    if length < 1:
        raise ParameterError(name='N', value=length)

    terms = _product_terms(system, fs)
    average = _averaged(terms, system.k, length, direct_limit)
    doubled = _averaged(terms, system.k, 2 * length, direct_limit)
    increment = FourierObservable.merged(
        [*average.terms, *((freq, -coef) for freq, coef in doubled.terms)], system.k
    )

    values = average.evaluate(grid_points(system.k, grid))
    l2_grid = float(np.sqrt(np.mean(np.abs(values) ** 2)))
    top = max(abs(m) for freq in average.frequencies for m in freq)

    decay_bound = None
    live = [(coef, theta) for _, coef, theta in terms if coef]
    if not any(is_resonant(theta) for _, theta in live):
        decay_bound = math.fsum(abs(coef) * geometric_bound(theta, length) for coef, theta in live)
        if average.l2_norm() > decay_bound * (1 + 1e-9) + 1e-15:
            raise InvariantViolationError(check='torus average above the summed Weyl bounds')

    log.debug('Torus average computed', length=length, terms=len(terms), grid=grid)
    return TorusAverage(
        length=length,
        grid=grid,
        average=average,
        values=values,
        l2_grid=l2_grid,
        l2_exact=average.l2_norm(),
        grid_exact=grid > 2 * top,
        cauchy_increment=increment.l2_norm(),
        decay_bound=decay_bound,
    )


@define(frozen=True)
class MirrorReport:
    modulus: int
    system_is_c: bool
    quotient_is_c: bool
    quotient_c_blocks: int

    @property
    def holds(self) -> bool:
        return self.system_is_c and not self.quotient_is_c


def annexb_finite_mirror(m: int = MIRROR_MODULUS) -> MirrorReport:
    """``Z_m x Z_m`` with ``(+1, +2)`` and ``(+2, +2)`` against its quotient by ``x``."""
    system = torus_grid_system(m, ANNEXB_MULTIPLES)
    quotient, _ = factor_quotient(system, Partition.from_keys(system, x_coordinate(m)))
    return MirrorReport(
        modulus=m,
        system_is_c=is_C_system(system),
        quotient_is_c=is_C_system(quotient),
        quotient_c_blocks=largest_C_factor(quotient).size,
    )


@define(frozen=True)
class WeylCheck:
    word: str
    freq: int
    value: float
    bound: float


@define(frozen=True)
class AnnexBChecks:
    invariance_2x_minus_y: str
    y_action_equality: str
    factor_in_c_factor: bool
    weyl: tuple[WeylCheck, ...]


@define(frozen=True)
class AnnexBReport:
    alpha: float
    length: int
    tolerance: float
    required_length: int
    checks: AnnexBChecks
    mirror: MirrorReport
    verdict: str


def annexb_system(alpha: float = DEFAULT_ALPHA) -> TorusSystem:
    """``T_1 = R_alpha x R_2alpha`` and ``T_2 = R_2alpha x R_2alpha`` on ``T^2``."""
    return TorusSystem.from_multiples(alpha, ANNEXB_MULTIPLES)


def _exact_checks(system: TorusSystem) -> tuple[str, str]:
    difference = FourierObservable.character((2, -1))
    if system.phase((2, -1), 0) != 0 or rotate_observable(difference, system, 0) != difference:
        raise InvariantViolationError(check='e(2x - y) is not fixed by T_1')

    if system.phase((0, 1), 0) != system.phase((0, 1), 1):
        raise InvariantViolationError(check='T_1 and T_2 act differently on y')
    return 'exact', 'exact'


def _fixed_characters(row: Sequence[int]) -> list[Frequency]:
    """Generators of the characters of ``T^2`` whose phase ``<m, row>`` vanishes."""
    a, b = row
    if a == b == 0:
        return [(1, 0), (0, 1)]
    g = math.gcd(a, b)
    return [(b // g, -a // g)]


def _in_lattice(frequency: Frequency, generators: Sequence[Frequency]) -> bool:
    """Membership in the subgroup of ``Z^2`` spanned by ``generators``, by Euclid on the
    first coordinate."""
    pivot: Frequency | None = None
    column = 0
    for vector in generators:
        if pivot is None and vector[0] == 0:
            column = math.gcd(column, vector[1])
            continue
        if pivot is None:
            pivot = vector
            continue
        while vector[0] != 0:
            q = pivot[0] // vector[0]
            pivot, vector = vector, (pivot[0] - q * vector[0], pivot[1] - q * vector[1])
        column = math.gcd(column, vector[1])

    if pivot is None:
        if frequency[0]:
            return False
        remainder = frequency[1]
    elif frequency[0] % pivot[0]:
        return False
    else:
        remainder = frequency[1] - frequency[0] // pivot[0] * pivot[1]
    return remainder == 0 or (column != 0 and remainder % column == 0)


def in_c_factor(system: TorusSystem, frequency: Frequency) -> bool:
    """Whether ``e(<m, z>)`` is measurable for the largest C-factor of a two-torus system,
    i.e. lies in the span of the characters fixed by ``T_1`` and by each ``T_i T_1^{-1}``."""
    if system.k != 2:  # noqa: PLR2004
        raise ArityError(expected=2, received=system.k)
    if system.multiples is None:
        raise ParameterError(
            name='multiples', value=None, requirement='integer multiples of alpha'
        )
    generators: list[Frequency] = []
    for word in c_factor_words(system.d):
        phases = [
            sum(e * multiple[axis] for e, multiple in zip(word, system.multiples, strict=True))
            for axis in range(system.k)
        ]
        generators.extend(_fixed_characters(phases))
    return _in_lattice(tuple(frequency), generators)


def _restricted_angles(alpha: float, frequencies: int) -> list[tuple[str, int, float]]:
    """Angles of ``R_2alpha`` and ``R_4alpha R_2alpha^{-1}`` at frequencies ``1..K``."""
    restricted = TorusSystem.from_multiples(alpha, RESTRICTED_MULTIPLES)
    angles = []
    for m in range(1, frequencies + 1):
        first = restricted.phase((m,), 0) or 0
        second = restricted.phase((m,), 1) or 0
        angles.append(('T1', m, (first * alpha) % 1.0))
        angles.append(('T2 T1^-1', m, ((second - first) * alpha) % 1.0))
    return angles


def annexb_experiment(
    alpha: float = DEFAULT_ALPHA,
    length: int | None = None,
    tolerance: float = DEFAULT_TORUS_TOLERANCE,
    frequencies: int = DEFAULT_TORUS_FREQUENCIES,
    *,
    direct_limit: int = DEFAULT_WEYL_DIRECT_LIMIT,
) -> AnnexBReport:
    """The two-torus system whose factor generated by ``2x mod 1`` carries an action with
    trivial isotropy, checked exactly on frequencies and numerically on Weyl sums."""
    if frequencies < 1:
        raise ParameterError(name='K', value=frequencies)
    if length is not None and length < 1:
        raise ParameterError(name='N', value=length)

    system = annexb_system(alpha)
    invariance, equality = _exact_checks(system)

    angles = _restricted_angles(alpha, frequencies)
    for _, m, theta in angles:
        if is_resonant(theta):
            raise ResonanceError(frequency=(m,), theta=theta)
    required = max(required_length(theta, tolerance, (m,)) for _, m, theta in angles)
    used = required if length is None else length
    log.info('Factor stability experiment started', alpha=alpha, length=used, required=required)

    weyl = []
    for word, m, theta in angles:
        result = weyl_sum_at_angle((m,), theta, used, direct_limit=direct_limit)
        weyl.append(WeylCheck(word, m, result.value, result.bound))
    if any(check.value > tolerance for check in weyl):
        raise ToleranceError(tolerance=tolerance, length=used, required=required)

    mirror = annexb_finite_mirror()
    if not mirror.holds:
        raise InvariantViolationError(check=f'finite mirror on Z_{mirror.modulus}')

    inside = in_c_factor(system, FACTOR_FREQUENCY)
    if not inside:
        raise InvariantViolationError(check='factor generated by 2x lies outside the C-factor')

    checks = AnnexBChecks(invariance, equality, inside, tuple(weyl))
    report = AnnexBReport(alpha, used, tolerance, required, checks, mirror, VERDICT)
    log.info('Factor stability experiment finished', verdict=report.verdict)
    return report
