from pathlib import Path
from typing import Annotated

import typer

from joinery.cli.average import average
from joinery.cli.factor import factor_app
from joinery.cli.joining import joining_app
from joinery.cli.output import CliState
from joinery.cli.system import system_app
from joinery.cli.torus import torus_app
from joinery.config import Settings
from joinery.constant import APP_NAME
from joinery.exceptions import InputError
from joinery.log import configure_logging

app = typer.Typer(
    name=APP_NAME,
    help='Exact workbench for multiple ergodic averages on finite systems.',
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)
app.add_typer(system_app, name='system')
app.add_typer(factor_app, name='factor')
app.add_typer(joining_app, name='joining')
app.command('average')(average)
app.add_typer(torus_app, name='torus')


@app.callback()
def main(
    ctx: typer.Context,
    pretty: Annotated[bool, typer.Option(help='Indent the JSON report.')] = False,
    verbose: Annotated[bool, typer.Option('--verbose', '-v', help='Log to stderr.')] = False,
    log_file: Annotated[Path | None, typer.Option(help='Append JSON logs to this file.')] = None,
    period_cap: Annotated[int | None, typer.Option(min=1)] = None,
    lp_bound: Annotated[int | None, typer.Option(min=1)] = None,
    truncation_bound: Annotated[int | None, typer.Option(min=1)] = None,
    weyl_direct_limit: Annotated[int | None, typer.Option(min=1)] = None,
    workers: Annotated[int | None, typer.Option(min=1)] = None,
) -> None:
    """Flags take precedence over JOINERY_* environment variables."""
    try:
        settings = Settings.from_env().override(
            period_cap=period_cap,
            lp_bound=lp_bound,
            truncation_bound=truncation_bound,
            weyl_direct_limit=weyl_direct_limit,
            workers=workers,
            log_file=log_file,
        )
    except InputError as error:
        typer.echo(str(error), err=True)
        raise typer.Exit(InputError.exit_code) from None

    configure_logging(settings.log_file, verbose=verbose)
    ctx.obj = CliState(settings, pretty)
