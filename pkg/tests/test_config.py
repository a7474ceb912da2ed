import json
import logging
import os
from pathlib import Path

import pytest
import structlog
from pytest_mock import MockerFixture

from joinery.config import Settings, default_log_file, user_state_dir
from joinery.constant import DEFAULT_LP_BOUND, DEFAULT_PERIOD_CAP
from joinery.exceptions import SettingsError
from joinery.log import FILE_HANDLER, configure_logging


def test_defaults() -> None:
    settings = Settings.from_env({})

    assert settings == Settings()
    assert settings.period_cap == DEFAULT_PERIOD_CAP
    assert settings.seed is None
    assert settings.log_file is None


def test_environment_overrides() -> None:
    settings = Settings.from_env(
        {'JOINERY_LP_BOUND': '900', 'JOINERY_SEED': '7', 'JOINERY_WORKERS': '3', 'OTHER': 'x'}
    )

    assert settings.lp_bound == 900  # noqa: PLR2004
    assert settings.seed == 7  # noqa: PLR2004
    assert settings.workers == 3  # noqa: PLR2004


def test_reads_process_environment(mocker: MockerFixture) -> None:
    mocker.patch.dict(os.environ, {'JOINERY_PERIOD_CAP': '42'})

    assert Settings.from_env().period_cap == 42  # noqa: PLR2004


@pytest.mark.parametrize('value', ['abc', '0', '-5', '1.5'])
def test_invalid_values(value: str) -> None:
    with pytest.raises(SettingsError, match='JOINERY_PERIOD_CAP'):
        Settings.from_env({'JOINERY_PERIOD_CAP': value})


def test_empty_log_file_means_default(mocker: MockerFixture, tmp_path: Path) -> None:
    mocker.patch.dict(os.environ, {'XDG_STATE_HOME': str(tmp_path)})

    settings = Settings.from_env({'JOINERY_LOG_FILE': ''})

    assert settings.log_file == tmp_path / 'joinery' / 'joinery.log'
    assert default_log_file() == settings.log_file
    assert user_state_dir('joinery').is_dir()


def test_override_skips_missing_flags() -> None:
    settings = Settings().override(lp_bound=None, workers=4, log_file=Path('run.log'))

    assert settings.lp_bound == DEFAULT_LP_BOUND
    assert settings.workers == 4  # noqa: PLR2004
    assert settings.log_file == Path('run.log')


@pytest.mark.usefixtures('reset_logging')
def test_file_logging_writes_json(tmp_path: Path) -> None:
    logfile = tmp_path / 'logs' / 'joinery.log'
    configure_logging(logfile)
    configure_logging(logfile)

    structlog.get_logger('joinery.test').info('Report written', points=5)
    structlog.get_logger('joinery.test').debug('Hidden detail')

    lines = logfile.read_text(encoding='utf-8').splitlines()
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert record['event'] == 'Report written'
    assert record['points'] == 5  # noqa: PLR2004
    assert record['level'] == 'info'
    names = [handler.get_name() for handler in logging.getLogger().handlers]
    assert names.count(FILE_HANDLER) == 1


@pytest.mark.usefixtures('reset_logging')
def test_verbose_logging_goes_to_stderr(capsys: pytest.CaptureFixture[str]) -> None:
    configure_logging(None, verbose=True)

    structlog.get_logger('joinery.test').debug('Detail shown', blocks=3)

    captured = capsys.readouterr()
    assert 'Detail shown' in captured.err
    assert captured.out == ''
