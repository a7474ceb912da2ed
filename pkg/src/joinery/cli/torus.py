from typing import Annotated

import typer

from joinery.cli.output import Exponents, WordType, emit, reporting, state
from joinery.constant import (
    DEFAULT_ALPHA,
    DEFAULT_TORUS_FREQUENCIES,
    DEFAULT_TORUS_GRID,
    DEFAULT_TORUS_TOLERANCE,
)
from joinery.torus.experiment import annexb_experiment, annexb_system, torus_multiple_average
from joinery.torus.system import FourierObservable
from joinery.torus.weyl import weyl_sum

torus_app = typer.Typer(help='Rotations of the torus in floating point.', no_args_is_help=True)

Alpha = Annotated[float, typer.Option(help='Base angle alpha.')]


@torus_app.command('annexb')
def annexb(
    ctx: typer.Context,
    alpha: Alpha = DEFAULT_ALPHA,
    n: Annotated[
        int | None, typer.Option('--n', min=1, help='Weyl sum length; default from the bound.')
    ] = None,
    tol: Annotated[float, typer.Option('--tol', help='Tolerance.')] = DEFAULT_TORUS_TOLERANCE,
    k: Annotated[int, typer.Option('--k', min=1, help='Frequencies 1..K.')] = (
        DEFAULT_TORUS_FREQUENCIES
    ),
) -> None:
    """A factor of a C-system on the two-torus that is not itself a C-system."""
    settings = state(ctx).settings
    with reporting(ctx):
        report = annexb_experiment(alpha, n, tol, k, direct_limit=settings.weyl_direct_limit)
        emit(ctx, report)


@torus_app.command('average')
def average(
    ctx: typer.Context,
    n: Annotated[int, typer.Option('--n', min=1, help='Average length N.')],
    freq: Annotated[
        list[Exponents] | None,
        typer.Option(click_type=WordType(), help='Character frequency per map, e.g. --freq=2,-1.'),
    ] = None,
    alpha: Alpha = DEFAULT_ALPHA,
    grid: Annotated[int, typer.Option(min=2, help='Grid points per axis.')] = DEFAULT_TORUS_GRID,
) -> None:
    """Multiple average of characters under ``(alpha, 2 alpha)`` and ``(2 alpha, 2 alpha)``."""
    settings = state(ctx).settings
    frequencies = freq or [Exponents((2, -1)), Exponents((0, 0))]
    with reporting(ctx):
        system = annexb_system(alpha)
        fs = [FourierObservable.character(frequency) for frequency in frequencies]
        report = torus_multiple_average(
            system, fs, n, grid=grid, direct_limit=settings.weyl_direct_limit
        )
        emit(ctx, report)


@torus_app.command('weyl')
def weyl(
    ctx: typer.Context,
    n: Annotated[int, typer.Option('--n', min=1, help='Sum length N.')],
    freq: Annotated[Exponents, typer.Option(click_type=WordType(), help='Frequency m.')],
    rotation: Annotated[list[float], typer.Option(help='Rotation coordinate; repeat per axis.')],
) -> None:
    """``|(1/N) sum_n e^{2 pi i n <m, rotation>}|`` with its geometric bound."""
    settings = state(ctx).settings
    with reporting(ctx):
        emit(ctx, weyl_sum(freq, rotation, n, direct_limit=settings.weyl_direct_limit))
