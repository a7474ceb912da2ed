from collections.abc import Iterator
from contextlib import contextmanager

import attrs
import click
import structlog
import typer
from attrs import define
from rich.console import Console

from joinery.config import Settings
from joinery.exceptions import InputError, JoineryError, PropertyError
from joinery.serialize import JSON, to_data, to_json

log: structlog.BoundLogger = structlog.get_logger(__name__)


@define(frozen=True)
class CliState:
    settings: Settings
    pretty: bool = False


def state(ctx: typer.Context) -> CliState:
    root = ctx.find_root()
    if not isinstance(root.obj, CliState):
        root.obj = CliState(Settings.from_env())
    return root.obj


def emit(ctx: typer.Context, report: object, *, holds: bool = True) -> None:
    """Print ``report`` as JSON on stdout and exit with 0, or 1 when ``holds`` is false."""
    if state(ctx).pretty:
        Console().print_json(to_json(report))
    else:
        typer.echo(to_json(report))
    if not holds:
        raise typer.Exit(PropertyError.exit_code)


def error_report(error: JoineryError) -> JSON:
    details: JSON = {'error': type(error).__name__, 'message': str(error)}
    if attrs.has(type(error)):
        fields = attrs.asdict(error, filter=lambda attribute, _: attribute.name != 'message')
        details.update(to_data(fields))
    return details


@contextmanager
def reporting(ctx: typer.Context) -> Iterator[None]:
    """Turn library errors into exit codes: property failures still print a JSON report."""
    try:
        yield
    except PropertyError as error:
        log.info('Property check failed', error=type(error).__name__)
        emit(ctx, error_report(error), holds=False)
    except InputError as error:
        log.info('Input rejected', error=type(error).__name__)
        typer.echo(to_json(error_report(error)), err=True)
        raise typer.Exit(InputError.exit_code) from None


class Exponents(tuple[int, ...]):
    __slots__ = ()


class WordType(click.ParamType):
    """Comma separated exponents such as ``1,-1``."""

    name = 'word'

    def convert(
        self, value: object, param: click.Parameter | None, ctx: click.Context | None
    ) -> Exponents:
        if isinstance(value, Exponents):
            return value
        try:
            return Exponents(int(part) for part in str(value).split(','))
        except ValueError:
            self.fail(f'{value!r} is not a comma separated list of integers', param, ctx)

