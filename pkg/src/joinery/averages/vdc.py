"""Van der Corput inequality with explicit constants.

Shifting the window by ``h <= H`` moves the Cesaro mean by at most ``2HB/N``; together with
``(a + b)^2 <= 2(a^2 + b^2)`` and the convexity of the squared norm this gives::

    ||(1/N) sum u_n||^2 <= (2/N) sum_n ||(1/H) sum_h u_{n+h}||^2 + 8 B^2 H^2 / N^2

with ``n = 1..N``, ``h = 1..H`` and ``B = max ||u_n||`` over the ``N + H`` terms used.
"""

from collections.abc import Sequence
from fractions import Fraction

import numpy as np
import structlog
from attrs import define

from joinery.constant import DEFAULT_PERIOD_CAP
from joinery.core.observable import Observable
from joinery.core.partition import same_system
from joinery.core.system import FiniteSystem, diagonal_orbit, system_period
from joinery.exact import ONE, ZERO, ExactComplex, exact_sum
from joinery.exceptions import (
    ArityError,
    InvariantViolationError,
    ParameterError,
    PeriodCapError,
    SequenceLengthError,
)

log: structlog.BoundLogger = structlog.get_logger(__name__)

RELATIVE_SLACK = 1e-12


@define(frozen=True)
class VdcQuantities:
    lhs: float
    corr: complex
    rhs_bound: float
    bound: float


@define(frozen=True)
class ExactVdcQuantities:
    lhs_sq: Fraction
    corr: ExactComplex
    rhs_bound: Fraction
    bound_sq: Fraction


def _check_window(length: int, n: int, h: int) -> None:
    if n < 1:
        raise ParameterError(name='N', value=n)
    if h < 1:
        raise ParameterError(name='H', value=h)
    if length < n + h:
        raise SequenceLengthError(required=n + h, received=length)


def vdc_quantities(
    us: np.ndarray, n: int, h: int, weights: np.ndarray | None = None
) -> VdcQuantities:
    """Float triple for the rows of ``us``; row ``j`` holds ``u_{j+1}``.

    ``weights`` turns the inner product into ``<a, b> = sum w a conj(b)``.
    """
    us = np.atleast_2d(np.asarray(us, dtype=np.complex128))
    _check_window(us.shape[0], n, h)
    w = np.ones(us.shape[1]) if weights is None else np.asarray(weights, dtype=np.float64)

    def norm_sq(vectors: np.ndarray) -> np.ndarray:
        return np.sum(np.abs(vectors) ** 2 * w, axis=-1)

    window = us[: n + h]
    bound = float(np.sqrt(np.max(norm_sq(window))))
    lhs = float(np.sqrt(norm_sq(np.mean(window[:n], axis=0))))

    shifts = np.arange(1, h + 1)
    corr = complex(
        np.mean(
            [np.mean(np.sum(window[:n] * np.conj(window[s : s + n]) * w, axis=1)) for s in shifts]
        )
    )
    # row j + s holds u_{j+1+s}
    smoothed = np.array([np.mean(window[j + 1 : j + h + 1], axis=0) for j in range(n)])
    rhs = float(2 * np.mean(norm_sq(smoothed)) + 8 * bound**2 * h**2 / n**2)

    if lhs**2 > rhs * (1 + RELATIVE_SLACK):
        raise InvariantViolationError(check=f'Van der Corput bound at N={n}, H={h}')
    return VdcQuantities(lhs, corr, rhs, bound)


def _products(
    x: FiniteSystem, fs: Sequence[Observable], length: int
) -> list[list[ExactComplex]]:
    """``u_n(p) = prod_i f_i(T_i^n p)`` as ``rows[n - 1][p]`` for ``n = 1..length``."""
    if len(fs) != x.d:
        raise ArityError(expected=x.d, received=len(fs))
    values = []
    for f in fs:
        same_system(x, f.system, 'van der Corput')
        values.append(f.exact_values('van der Corput'))

    rows = [[ONE] * x.n for _ in range(length)]
    for p in range(x.n):
        for row, images in zip(rows, diagonal_orbit(x, p, length), strict=True):
            for slot_values, image in zip(values, images, strict=True):
                row[p] *= slot_values[image]
    return rows


def _inner(
    x: FiniteSystem, first: Sequence[ExactComplex], second: Sequence[ExactComplex]
) -> ExactComplex:
    pairs = zip(first, second, x.weights, strict=True)
    return exact_sum([a * b.conjugate() * w for a, b, w in pairs])


def _norm_sq(x: FiniteSystem, vector: Sequence[ExactComplex]) -> Fraction:
    return sum((v.abs_sq() * w for v, w in zip(vector, x.weights, strict=True)), Fraction(0))


def _mean(rows: Sequence[Sequence[ExactComplex]]) -> list[ExactComplex]:
    return [exact_sum(column) / len(rows) for column in zip(*rows, strict=True)]


def exact_vdc_quantities(
    x: FiniteSystem, fs: Sequence[Observable], n: int, h: int
) -> ExactVdcQuantities:
    """The triple for ``u_n = prod_i f_i o T_i^n`` in ``L^2(mu)``, with squared norms."""
    _check_window(n + h, n, h)
    rows = _products(x, fs, n + h)

    bound_sq = max(_norm_sq(x, row) for row in rows)
    lhs_sq = _norm_sq(x, _mean(rows[:n]))
    corr = exact_sum(
        [exact_sum([_inner(x, rows[j], rows[j + s]) for j in range(n)]) for s in range(1, h + 1)]
    ) / (n * h)
    smoothed = [_mean(rows[j + 1 : j + h + 1]) for j in range(n)]
    rhs = 2 * sum((_norm_sq(x, row) for row in smoothed), Fraction(0)) / n
    rhs += 8 * bound_sq * Fraction(h, n) ** 2

    if lhs_sq > rhs:
        raise InvariantViolationError(check=f'exact Van der Corput bound at N={n}, H={h}')
    return ExactVdcQuantities(lhs_sq, corr, rhs, bound_sq)


def correlation_profile(
    x: FiniteSystem,
    fs: Sequence[Observable],
    hs: Sequence[int],
    *,
    period_cap: int = DEFAULT_PERIOD_CAP,
) -> dict[int, ExactComplex]:
    """``(1/H) sum_h lim_N (1/N) sum_n <u_n, u_{n+h}>`` for every ``H`` in ``hs``.

    ``<u_n, u_{n+h}>`` is periodic in ``n``, so the limit in ``N`` is the mean over one period.
    """
    for h in hs:
        if h < 1:
            raise ParameterError(name='H', value=h)
    period = system_period(x)
    if period > period_cap:
        raise PeriodCapError(period=period, cap=period_cap)

    top = max(hs, default=0)
    rows = _products(x, fs, period + top)
    lags = [
        exact_sum([_inner(x, rows[j], rows[j + s]) for j in range(period)]) / period
        for s in range(1, top + 1)
    ]

    profile = {}
    running = ZERO
    for s, lag in enumerate(lags, start=1):
        running += lag
        if s in hs:
            profile[s] = running / s
    log.debug('Correlation profile computed', period=period, lags=top)
    return profile
