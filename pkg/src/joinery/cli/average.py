from pathlib import Path
from typing import Annotated

import typer

from joinery.averages.multiple import (
    average_report,
    exact_limit_average,
    limit_equals_projected,
    multiple_average,
)
from joinery.averages.vanishing import vanishing_check
from joinery.averages.vdc import exact_vdc_quantities
from joinery.cli.output import emit, reporting, state
from joinery.core.system import averaging_periods, require_valid
from joinery.exceptions import ParameterError
from joinery.serialize import load_observables, load_system, to_data


def average(
    ctx: typer.Context,
    path: Annotated[Path, typer.Argument(help='System description file (JSON).')],
    functions: Annotated[Path, typer.Argument(help='Functions file, one observable per map.')],
    n: Annotated[int | None, typer.Option('--n', help='Average length N.')] = None,
    exact_limit: Annotated[
        bool, typer.Option('--exact-limit', help='Exact limit, checked against A_P.')
    ] = False,
    vdc: Annotated[
        int | None, typer.Option('--vdc', help='Van der Corput triple with this H (needs --n).')
    ] = None,
    vanishing: Annotated[
        bool, typer.Option('--vanishing', help='Vanishing integral on the self-joining.')
    ] = False,
) -> None:
    """Multiple ergodic averages ``(1/N) sum_n prod_i f_i o T_i^n``."""
    settings = state(ctx).settings
    with reporting(ctx):
        system = require_valid(load_system(path))
        fs = load_observables(functions, system)

        if vdc is not None:
            if n is None:
                raise ParameterError(name='--n', value=None, requirement='given with --vdc')
            emit(ctx, exact_vdc_quantities(system, fs, n, vdc))
        elif exact_limit:
            limit = exact_limit_average(system, fs, period_cap=settings.period_cap)
            periods = averaging_periods(system, settings.period_cap)
            sampled = {p: multiple_average(system, fs, p) for p in set(periods)}
            periodic = all(sampled[p].values[x] == limit.values[x] for x, p in enumerate(periods))
            projection = limit_equals_projected(system, fs, period_cap=settings.period_cap)
            report = {
                'P': max(periods),
                'A_limit': to_data(limit),
                'A_P_equals_limit': periodic,
                'projection': to_data(projection),
            }
            emit(ctx, report, holds=periodic)
        elif vanishing:
            emit(ctx, vanishing_check(system, fs, period_cap=settings.period_cap))
        else:
            if n is None:
                raise ParameterError(name='--n', value=None, requirement='given')
            emit(ctx, average_report(system, fs, n, period_cap=settings.period_cap))
