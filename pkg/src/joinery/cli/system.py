from pathlib import Path
from typing import Annotated

import typer

from joinery.cli.output import emit, reporting
from joinery.core.partition import is_C_system, largest_C_factor
from joinery.core.system import require_valid, system_period, validate_system
from joinery.serialize import load_system, system_digest, system_to_dict, to_data

system_app = typer.Typer(help='Inspect system description files.', no_args_is_help=True)

SystemPath = Annotated[Path, typer.Argument(help='System description file (JSON).')]


@system_app.command('check')
def check(ctx: typer.Context, path: SystemPath) -> None:
    """Validate mass, weights, measure preservation and commutation."""
    with reporting(ctx):
        system = load_system(path)
        report = validate_system(system)
        emit(
            ctx,
            {
                'digest': system_digest(system),
                'passed': report.passed,
                'violations': to_data(report.violations),
            },
            holds=report.passed,
        )


@system_app.command('show')
def show(ctx: typer.Context, path: SystemPath) -> None:
    """Print the normalized system with its period and largest C-factor."""
    with reporting(ctx):
        system = require_valid(load_system(path))
        c_factor = largest_C_factor(system)
        emit(
            ctx,
            {
                'digest': system_digest(system),
                'system': system_to_dict(system),
                'period': system_period(system),
                'c_factor': to_data(c_factor),
                'is_c_system': is_C_system(system),
            },
        )
