import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import TYPE_CHECKING

import structlog

from joinery.constant import DEFAULT_BACKUP_COUNT, DEFAULT_LOG_FILE_SIZE

if TYPE_CHECKING:
    from pathlib import Path

    from structlog.typing import Processor

FILE_HANDLER = 'joinery.file'
CONSOLE_HANDLER = 'joinery.console'


def _shared_processors() -> list['Processor']:
    return [
        structlog.stdlib.add_log_level,
        structlog.stdlib.ExtraAdder(),
        structlog.processors.UnicodeDecoder(),
        structlog.processors.TimeStamper(fmt='%Y-%m-%d %H:%M:%S'),
    ]


def _file_handler(logfile: 'Path', shared: list['Processor']) -> logging.Handler:
    logfile.parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        logfile,
        maxBytes=DEFAULT_LOG_FILE_SIZE,
        backupCount=DEFAULT_BACKUP_COUNT,
        encoding='utf-8',
    )
    handler.set_name(FILE_HANDLER)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            foreign_pre_chain=shared,
            processors=[
                structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                structlog.processors.dict_tracebacks,
                structlog.processors.JSONRenderer(),
            ],
        )
    )
    return handler


def _console_handler(shared: list['Processor']) -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(CONSOLE_HANDLER)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            foreign_pre_chain=shared,
            processors=[
                structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                structlog.dev.ConsoleRenderer(colors=False),
            ],
        )
    )
    return handler


def configure_logging(logfile: 'Path | None', *, verbose: bool = False) -> None:
    """Route structlog through stdlib logging.

    ``logfile`` receives JSON lines, ``verbose`` adds a console renderer on stderr and lowers
    the level to DEBUG. Nothing is ever written to stdout, which carries the JSON reports.
    """
    shared = _shared_processors()
    processors = [*shared, structlog.stdlib.filter_by_level]
    if verbose:
        processors += [
            structlog.stdlib.add_logger_name,
            structlog.processors.CallsiteParameterAdder(
                parameters=[structlog.processors.CallsiteParameter.LINENO]
            ),
        ]

    # Reconfigured on every CLI invocation, so loggers must not be cached.
    structlog.configure(
        processors=[
            *processors,
            structlog.processors.StackInfoRenderer(),
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    installed = {handler.get_name() for handler in root.handlers}
    if logfile is not None and FILE_HANDLER not in installed:
        root.addHandler(_file_handler(logfile, shared))
    if verbose and CONSOLE_HANDLER not in installed:
        root.addHandler(_console_handler(shared))


def reset_logging() -> None:
    """Close and detach the handlers installed by ``configure_logging``."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        if handler.get_name() in {FILE_HANDLER, CONSOLE_HANDLER}:
            root.removeHandler(handler)
            handler.close()
    structlog.reset_defaults()
