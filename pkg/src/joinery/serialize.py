"""JSON files and reports.

System files look like ``{"n": 5, "weights": ["1/5", ...], "maps": [[1, 2, 3, 4, 0]]}``.
Exact values are written as ``"p/q"`` strings everywhere.
"""

import json
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import structlog
from attrs import define
from blake3 import blake3
from cattrs import BaseValidationError, Converter, transform_error
from cattrs.gen import make_dict_structure_fn, make_dict_unstructure_fn, override

from joinery.averages.multiple import AverageReport
from joinery.constant import DIGEST_LENGTH
from joinery.core.observable import Observable
from joinery.core.partition import Partition
from joinery.core.system import FiniteSystem, Permutation
from joinery.exact import ExactComplex, format_fraction, parse_fraction
from joinery.exceptions import (
    CouplingMismatchError,
    ObservableLengthError,
    SystemFileError,
)
from joinery.joinings.coupling import Coupling
from joinery.torus.experiment import TorusAverage
from joinery.torus.system import FourierObservable

log: structlog.BoundLogger = structlog.get_logger(__name__)

type JSON = dict[str, Any]


@define
class SystemFile:
    n: int
    weights: list[Fraction]
    maps: list[list[int]]


@define
class MassEntry:
    point: list[int]
    mass: Fraction


@define
class CouplingFile:
    components: list[str]
    masses: list[MassEntry]


@define
class ObservableFile:
    re: list[Fraction] | None = None
    im: list[Fraction] | None = None
    floats: list[float] | None = None
    floats_im: list[float] | None = None


converter = Converter()
converter.register_structure_hook(Fraction, lambda value, _: parse_fraction(value))
converter.register_unstructure_hook(Fraction, format_fraction)
converter.register_unstructure_hook(
    ExactComplex, lambda value: {'re': format_fraction(value.re), 'im': format_fraction(value.im)}
)
converter.register_unstructure_hook(complex, lambda value: {'re': value.real, 'im': value.imag})
converter.register_unstructure_hook(np.floating, float)
converter.register_unstructure_hook(Permutation, lambda perm: list(perm.images))
converter.register_structure_hook(
    MassEntry, make_dict_structure_fn(MassEntry, converter, point=override(rename='tuple'))
)
converter.register_structure_hook(
    ObservableFile,
    make_dict_structure_fn(
        ObservableFile,
        converter,
        floats=override(rename='float'),
        floats_im=override(rename='float_im'),
    ),
)


def system_to_dict(system: FiniteSystem) -> JSON:
    return {
        'n': system.n,
        'weights': [format_fraction(w) for w in system.weights],
        'maps': [list(perm.images) for perm in system.maps],
    }


def system_digest(system: FiniteSystem) -> str:
    canonical = json.dumps(system_to_dict(system), sort_keys=True, separators=(',', ':'))
    return blake3(canonical.encode('utf-8')).hexdigest()[:DIGEST_LENGTH]


def observable_to_dict(f: Observable) -> JSON:
    if f.is_exact:
        values = f.exact_values('observable_to_dict')
        return {
            're': [format_fraction(v.re) for v in values],
            'im': [format_fraction(v.im) for v in values],
        }
    floats = [complex(v) for v in f.values]
    data: JSON = {'float': [v.real for v in floats]}
    if any(v.imag for v in floats):
        data['float_im'] = [v.imag for v in floats]
    return data


def coupling_to_dict(coupling: Coupling) -> JSON:
    return {
        'components': [system_digest(system) for system in coupling.components],
        'masses': [
            {'tuple': list(point), 'mass': format_fraction(mass)}
            for point, mass in coupling.masses.items()
        ],
    }


def fourier_to_dict(f: FourierObservable) -> JSON:
    return {
        'terms': [
            {'freq': list(freq), 're': coef.real, 'im': coef.imag} for freq, coef in f.terms
        ]
    }


converter.register_unstructure_hook(FiniteSystem, system_to_dict)
converter.register_unstructure_hook(Observable, observable_to_dict)
converter.register_unstructure_hook(Coupling, coupling_to_dict)
converter.register_unstructure_hook(Partition, lambda p: {'label': list(p.labels)})
converter.register_unstructure_hook(FourierObservable, fourier_to_dict)
converter.register_unstructure_hook(
    AverageReport,
    make_dict_unstructure_fn(
        AverageReport,
        converter,
        length=override(rename='N'),
        period=override(rename='P'),
        average=override(rename='A_N'),
        limit=override(rename='A_limit'),
    ),
)
converter.register_unstructure_hook(
    TorusAverage, make_dict_unstructure_fn(TorusAverage, converter, values=override(omit=True))
)


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except OSError as error:
        raise SystemFileError(path=str(path), reason=error.strerror or str(error)) from None
    except json.JSONDecodeError as error:
        raise SystemFileError(path=str(path), reason=f'invalid JSON ({error.msg})') from None


def _structure[T](data: Any, cls: type[T], path: Path) -> T:
    try:
        return converter.structure(data, cls)
    except BaseValidationError as error:
        reason = '; '.join(transform_error(error))
        raise SystemFileError(path=str(path), reason=reason) from None
    except (AttributeError, KeyError, TypeError, ValueError) as error:
        raise SystemFileError(path=str(path), reason=str(error)) from None


def system_from_dict(data: Any, path: Path) -> FiniteSystem:
    raw = _structure(data, SystemFile, path)
    if raw.n != len(raw.weights):
        reason = f'n is {raw.n} but {len(raw.weights)} weights are given'
        raise SystemFileError(path=str(path), reason=reason)
    return FiniteSystem(raw.weights, raw.maps)


def load_system(path: Path) -> FiniteSystem:
    """Read a system file; invariants are left to :func:`validate_system`."""
    system = system_from_dict(_read_json(path), path)
    log.debug('System loaded', path=str(path), points=system.n, maps=system.d)
    return system


def observable_from_dict(data: Any, system: FiniteSystem, path: Path) -> Observable:
    raw = _structure(data, ObservableFile, path)
    if raw.floats is not None:
        im = raw.floats_im or [0.0] * len(raw.floats)
        if len(im) != len(raw.floats):
            raise ObservableLengthError(points=len(raw.floats), values=len(im))
        return Observable.floating(system, map(complex, raw.floats, im))
    if raw.re is None:
        raise SystemFileError(path=str(path), reason='observable needs "re" or "float" values')
    im_part = raw.im or [Fraction(0)] * len(raw.re)
    if len(im_part) != len(raw.re):
        raise ObservableLengthError(points=len(raw.re), values=len(im_part))
    return Observable.exact(system, map(ExactComplex, raw.re, im_part))


def load_observables(path: Path, system: FiniteSystem) -> list[Observable]:
    """A functions file: ``{"functions": [observable, ...]}`` or a bare list."""
    data = _read_json(path)
    if isinstance(data, dict) and 'functions' in data:
        data = data['functions']
    if not isinstance(data, list):
        raise SystemFileError(path=str(path), reason='expected a list of observables')
    return [observable_from_dict(item, system, path) for item in data]


def load_partition(path: Path, system: FiniteSystem) -> Partition:
    data = _read_json(path)
    labels = data.get('label') if isinstance(data, dict) else data
    if not isinstance(labels, list) or not all(isinstance(v, int) for v in labels):
        raise SystemFileError(path=str(path), reason='expected {"label": [int, ...]}')
    if len(labels) != system.n:
        raise ObservableLengthError(points=system.n, values=len(labels))
    return Partition.from_keys(system, labels)


def coupling_from_dict(data: Any, systems: Sequence[FiniteSystem], path: Path) -> Coupling:
    raw = _structure(data, CouplingFile, path)
    digests = [system_digest(system) for system in systems]
    if raw.components != digests:
        reason = f'components {raw.components} do not match the given systems {digests}'
        raise CouplingMismatchError(reason=reason)

    masses: dict[tuple[int, ...], Fraction] = {}
    for entry in raw.masses:
        point = tuple(entry.point)
        masses[point] = masses.get(point, Fraction(0)) + entry.mass
    return Coupling(tuple(systems), masses)


def load_coupling(path: Path, systems: Sequence[FiniteSystem]) -> Coupling:
    return coupling_from_dict(_read_json(path), systems, path)


def to_data(report: object) -> Any:
    return converter.unstructure(report)


def to_json(report: object, *, indent: int | None = None) -> str:
    return json.dumps(to_data(report), indent=indent)


def describe_error(error: Exception) -> JSON:
    return {'error': type(error).__name__, 'message': str(error)}
