import os
from collections.abc import Mapping
from pathlib import Path

import cattrs
import structlog
from attrs import define, evolve, field, fields, validators

from joinery.constant import (
    APP_NAME,
    DEFAULT_LP_BOUND,
    DEFAULT_PERIOD_CAP,
    DEFAULT_TRUNCATION_BOUND,
    DEFAULT_WEYL_DIRECT_LIMIT,
    DEFAULT_WORKERS,
    ENV_PREFIX,
)
from joinery.exceptions import SettingsError

log: structlog.BoundLogger = structlog.get_logger(__name__)

_positive = [validators.instance_of(int), validators.ge(1)]

_env_converter = cattrs.Converter()
_env_converter.register_structure_hook(Path, lambda value, _: Path(value).expanduser())


def user_state_dir(*resources: str | Path) -> Path:
    base_state_dir = Path(os.getenv('XDG_STATE_HOME', Path.home() / '.local' / 'state'))

    full_path = base_state_dir / Path(*resources)
    full_path.mkdir(parents=True, mode=0o700, exist_ok=True)

    return full_path


def default_log_file() -> Path:
    return user_state_dir(APP_NAME) / f'{APP_NAME}.log'


@define(frozen=True)
class Settings:
    period_cap: int = field(default=DEFAULT_PERIOD_CAP, validator=_positive)
    lp_bound: int = field(default=DEFAULT_LP_BOUND, validator=_positive)
    truncation_bound: int = field(default=DEFAULT_TRUNCATION_BOUND, validator=_positive)
    weyl_direct_limit: int = field(default=DEFAULT_WEYL_DIRECT_LIMIT, validator=_positive)
    workers: int = field(default=DEFAULT_WORKERS, validator=_positive)
    seed: int | None = None
    log_file: Path | None = None

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> 'Settings':
        """Defaults overridden by ``JOINERY_*`` variables, e.g. ``JOINERY_LP_BOUND=900``."""
        environ = os.environ if environ is None else environ
        settings = cls()
        for attribute in fields(cls):
            variable = f'{ENV_PREFIX}{attribute.name.upper()}'
            if variable not in environ:
                continue

            value = environ[variable]
            if attribute.name == 'log_file' and not value:
                value = str(default_log_file())

            try:
                structured = _env_converter.structure(value, attribute.type)
                settings = evolve(settings, **{attribute.name: structured})
            except (cattrs.BaseValidationError, TypeError, ValueError):
                raise SettingsError(variable=variable, value=value) from None

            log.debug('Setting read from environment', variable=variable, value=value)

        return settings

    def override(self, **changes: object) -> 'Settings':
        """Apply command-line values; ``None`` means the flag was not given."""
        return evolve(self, **{name: value for name, value in changes.items() if value is not None})
