from pathlib import Path
from typing import Annotated

import typer

from joinery.cli.output import Exponents, WordType, emit, reporting
from joinery.core.factor import factor_quotient
from joinery.core.partition import is_C_system, isotropy_partition, largest_C_factor
from joinery.core.system import require_valid
from joinery.serialize import load_partition, load_system, system_to_dict, to_data

factor_app = typer.Typer(help='Isotropy factors, C-factors and quotients.', no_args_is_help=True)

SystemPath = Annotated[Path, typer.Argument(help='System description file (JSON).')]


@factor_app.command('isotropy')
def isotropy(
    ctx: typer.Context,
    path: SystemPath,
    word: Annotated[
        Exponents,
        typer.Option(click_type=WordType(), help='Exponents, one per map, e.g. --word=1,-1.'),
    ],
) -> None:
    """Orbit partition of ``T_1^{a_1} ... T_d^{a_d}``."""
    with reporting(ctx):
        system = require_valid(load_system(path))
        partition = isotropy_partition(system, word)
        emit(ctx, {'word': list(word), 'blocks': partition.size, **to_data(partition)})


@factor_app.command('largest-c')
def largest_c(ctx: typer.Context, path: SystemPath) -> None:
    """Join of the isotropy factors of ``T_1`` and ``T_i T_1^{-1}``."""
    with reporting(ctx):
        system = require_valid(load_system(path))
        partition = largest_C_factor(system)
        emit(
            ctx,
            {'blocks': partition.size, 'is_c_system': is_C_system(system), **to_data(partition)},
        )


@factor_app.command('quotient')
def quotient(
    ctx: typer.Context,
    path: SystemPath,
    labels: Annotated[Path, typer.Option(help='Partition file {"label": [...]}.')],
) -> None:
    """Quotient by an invariant partition; a non-invariant one fails with its witness."""
    with reporting(ctx):
        system = require_valid(load_system(path))
        partition = load_partition(labels, system)
        target, projection = factor_quotient(system, partition)
        emit(ctx, {'system': system_to_dict(target), 'projection': list(projection.assignment)})
