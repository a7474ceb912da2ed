import json
from fractions import Fraction
from pathlib import Path

import pytest

from joinery.averages.multiple import average_report
from joinery.core.corpus import x_coordinate
from joinery.core.observable import Mode, Observable
from joinery.core.partition import Partition
from joinery.core.system import FiniteSystem
from joinery.exact import ExactComplex
from joinery.exceptions import CouplingMismatchError, ObservableLengthError, SystemFileError
from joinery.joinings.coupling import product_coupling
from joinery.serialize import (
    coupling_from_dict,
    coupling_to_dict,
    describe_error,
    load_observables,
    load_partition,
    load_system,
    observable_from_dict,
    system_digest,
    system_from_dict,
    system_to_dict,
    to_data,
    to_json,
)
from joinery.torus.experiment import annexb_system, torus_multiple_average
from joinery.torus.system import FourierObservable

F = Fraction

SOURCE = Path('inline.json')


def test_load_bundled_systems(
    resources: Path, z5_12: FiniteSystem, grid_c: FiniteSystem
) -> None:
    assert load_system(resources / 'z5_12.json') == z5_12
    assert load_system(resources / 'z5x5_c.json') == grid_c


def test_invalid_mass_still_loads(resources: Path) -> None:
    system = load_system(resources / 'invalid_mass.json')

    assert system.weights[-1] == F(1, 4)


@pytest.mark.parametrize(
    ('name', 'reason'), [('malformed.json', 'invalid JSON'), ('missing.json', 'Failed to read')]
)
def test_unreadable_files(resources: Path, name: str, reason: str) -> None:
    with pytest.raises(SystemFileError, match=reason):
        load_system(resources / name)


@pytest.mark.parametrize(
    'data',
    [
        {'n': 2, 'weights': ['0.5', '1/2'], 'maps': [[0, 1]]},
        {'n': 2, 'weights': ['1/2', '1/2']},
        {'n': 3, 'weights': ['1/2', '1/2'], 'maps': [[0, 1]]},
        ['not', 'an', 'object'],
    ],
)
def test_bad_system_data(data: object) -> None:
    with pytest.raises(SystemFileError):
        system_from_dict(data, SOURCE)


def test_system_dict_and_digest(z5_12: FiniteSystem, z5_rotation: FiniteSystem) -> None:
    data = system_to_dict(z5_12)

    assert data['weights'][0] == '1/5'
    assert system_from_dict(data, SOURCE) == z5_12
    assert len(system_digest(z5_12)) == 16  # noqa: PLR2004
    assert system_digest(z5_12) == system_digest(system_from_dict(data, SOURCE))
    assert system_digest(z5_12) != system_digest(z5_rotation)


def test_load_observables(
    resources: Path, z5_12: FiniteSystem, centred_delta: Observable, delta: Observable
) -> None:
    fs = load_observables(resources / 'z5_12_functions.json', z5_12)

    assert fs == [centred_delta, delta]


def test_observable_formats(z5_12: FiniteSystem) -> None:
    data = {'float': [1, 0, 0, 0, 0], 'float_im': [0, 1, 0, 0, 0]}
    floats = observable_from_dict(data, z5_12, SOURCE)
    gaussian = observable_from_dict({'re': ['1/2'] * 5, 'im': ['-1'] * 5}, z5_12, SOURCE)

    assert floats.mode is Mode.FLOAT
    assert floats.values[1] == 1j
    assert gaussian.values[0] == ExactComplex(F(1, 2), -1)


def test_observable_errors(z5_12: FiniteSystem) -> None:
    with pytest.raises(SystemFileError, match='needs'):
        observable_from_dict({}, z5_12, SOURCE)
    with pytest.raises(ObservableLengthError):
        observable_from_dict({'re': ['1'] * 5, 'im': ['0']}, z5_12, SOURCE)
    with pytest.raises(ObservableLengthError):
        observable_from_dict({'re': ['1'] * 3}, z5_12, SOURCE)


def test_load_partition(resources: Path, grid_c: FiniteSystem, z5_12: FiniteSystem) -> None:
    partition = load_partition(resources / 'z5x5_x_labels.json', grid_c)

    assert partition == Partition.from_keys(grid_c, x_coordinate(5))
    with pytest.raises(ObservableLengthError):
        load_partition(resources / 'z5x5_x_labels.json', z5_12)


def test_coupling_files_check_digests(z5_12: FiniteSystem, z5_rotation: FiniteSystem) -> None:
    coupling = product_coupling([z5_12, z5_12])
    data = coupling_to_dict(coupling)

    loaded = coupling_from_dict(json.loads(json.dumps(data)), [z5_12, z5_12], SOURCE)

    assert loaded.masses == coupling.masses
    assert data['masses'][0] == {'tuple': [0, 0], 'mass': '1/25'}
    with pytest.raises(CouplingMismatchError):
        coupling_from_dict(data, [z5_12, z5_rotation], SOURCE)


def test_average_report_names(
    z5_12: FiniteSystem, centred_delta: Observable, delta: Observable
) -> None:
    data = to_data(average_report(z5_12, [centred_delta, delta], 5))

    assert set(data) == {'N', 'P', 'A_N', 'A_limit', 'discrepancy_sq', 'bound_sq'}
    assert data['P'] == 5  # noqa: PLR2004
    assert data['discrepancy_sq'] == '0/1'
    assert data['A_N']['re'][0] == '4/25'


def test_scalars_and_partitions(z5_12: FiniteSystem) -> None:
    assert to_data(ExactComplex(F(1, 2), -1)) == {'re': '1/2', 'im': '-1/1'}
    assert to_data(2 - 1j) == {'re': 2.0, 'im': -1.0}
    assert json.loads(to_json(Partition.from_keys(z5_12, [3, 3, 1, 1, 0]))) == {
        'label': [0, 0, 1, 1, 2]
    }


def test_torus_average_omits_grid_values() -> None:
    fs = [FourierObservable.character((2, -1)), FourierObservable.constant(2)]
    result = torus_multiple_average(annexb_system(), fs, 10, grid=4)

    data = to_data(result)

    assert 'values' not in data
    assert data['average'] == {'terms': [{'freq': [2, -1], 're': 1.0, 'im': 0.0}]}


def test_describe_error() -> None:
    error = SystemFileError(path='x.json', reason='gone')

    assert describe_error(error) == {
        'error': 'SystemFileError',
        'message': 'Failed to read "x.json": gone.',
    }
