from pathlib import Path
from typing import Annotated

import typer

from joinery.cli.output import emit, reporting, state
from joinery.core.system import require_valid, system_period
from joinery.joinings.coupling import all_diagonal_words, check_equivariance, validate_coupling
from joinery.joinings.furstenberg import furstenberg_self_joining, furstenberg_words
from joinery.joinings.relative import rel_indep_self_joining
from joinery.joinings.satedness import satedness_falsifier
from joinery.serialize import load_coupling, load_partition, load_system, to_data

joining_app = typer.Typer(help='Couplings, joinings and satedness.', no_args_is_help=True)

SystemPath = Annotated[Path, typer.Argument(help='System description file (JSON).')]


@joining_app.command('furstenberg')
def furstenberg(ctx: typer.Context, path: SystemPath) -> None:
    """Cesaro limit of the diagonal orbit measures under ``T_1^n x ... x T_d^n``."""
    settings = state(ctx).settings
    with reporting(ctx):
        system = require_valid(load_system(path))
        joining = furstenberg_self_joining(system, period_cap=settings.period_cap)
        emit(ctx, {'period': system_period(system), 'coupling': to_data(joining)})


@joining_app.command('relindep')
def relindep(
    ctx: typer.Context,
    path: SystemPath,
    labels: Annotated[Path, typer.Option(help='Invariant partition file {"label": [...]}.')],
) -> None:
    """Relatively independent self-joining over an invariant partition."""
    with reporting(ctx):
        system = require_valid(load_system(path))
        joining = rel_indep_self_joining(system, load_partition(labels, system))
        emit(ctx, {'coupling': to_data(joining)})


@joining_app.command('check')
def check(
    ctx: typer.Context,
    coupling: Annotated[Path, typer.Argument(help='Coupling file (JSON).')],
    systems: Annotated[list[Path], typer.Argument(help='Component system files, in order.')],
    furstenberg: Annotated[
        bool, typer.Option(help='Also check invariance under T_1 x ... x T_d.')
    ] = False,
) -> None:
    """Marginals, total mass and equivariance under every diagonal action."""
    with reporting(ctx):
        components = [require_valid(load_system(path)) for path in systems]
        lam = validate_coupling(load_coupling(coupling, components))

        words = list(all_diagonal_words(components))
        if furstenberg:
            words.extend(furstenberg_words(components[0].d)[-1:])
        checks = []
        for slot_words in words:
            result = to_data(check_equivariance(lam, slot_words))
            checks.append({'words': [list(word) for word in slot_words], **result})
        holds = all(item['holds'] for item in checks)
        emit(ctx, {'holds': holds, 'equivariance': checks}, holds=holds)


@joining_app.command('falsify')
def falsify(
    ctx: typer.Context,
    x_path: Annotated[Path, typer.Argument(help='System to test for satedness.')],
    y_path: Annotated[Path, typer.Argument(help='C-system to join with.')],
    bound: Annotated[int | None, typer.Option(min=1, help='Largest product size.')] = None,
) -> None:
    """Search invariant couplings for a correlation the C-factor does not explain."""
    settings = state(ctx).settings
    with reporting(ctx):
        x = require_valid(load_system(x_path))
        y = require_valid(load_system(y_path))
        report = satedness_falsifier(
            x, y, bound=bound or settings.lp_bound, workers=settings.workers
        )
        emit(ctx, report)
