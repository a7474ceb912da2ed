from typing import ClassVar

from attrs import define, field


class JoineryError(Exception):
    exit_code: ClassVar[int] = 1


class InputError(JoineryError):
    exit_code: ClassVar[int] = 2


class PropertyError(JoineryError):
    exit_code: ClassVar[int] = 1


@define
class SystemFileError(InputError):
    path: str
    reason: str
    message: str = field(default='Failed to read "{path}": {reason}.', init=False)

    def __str__(self) -> str:
        return self.message.format(path=self.path, reason=self.reason)


@define
class NotAPermutationError(InputError):
    images: tuple[int, ...]
    message: str = field(default='{images} is not a permutation of 0..{top}.', init=False)

    def __str__(self) -> str:
        return self.message.format(images=list(self.images), top=len(self.images) - 1)


@define
class InvalidSystemError(PropertyError):
    failures: tuple[str, ...]
    message: str = field(default='System fails validation: {failures}.', init=False)

    def __str__(self) -> str:
        return self.message.format(failures='; '.join(self.failures))


@define
class SystemMismatchError(InputError):
    operation: str
    message: str = field(
        default='Operation "{operation}" received objects living on different systems.',
        init=False,
    )

    def __str__(self) -> str:
        return self.message.format(operation=self.operation)


@define
class ModeError(InputError):
    operation: str
    message: str = field(
        default='Operation "{operation}" requires exact-mode observables.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(operation=self.operation)


@define
class MixedModeError(ModeError):
    message: str = field(
        default=(
            'Operation "{operation}" mixes exact and float observables; '
            'convert with to_float() first.'
        ),
        init=False,
    )


@define
class ArityError(InputError):
    expected: int
    received: int
    message: str = field(
        default='Expected {expected} entries (one per map), received {received}.',
        init=False,
    )

    def __str__(self) -> str:
        return self.message.format(expected=self.expected, received=self.received)


@define
class ParameterError(InputError):
    name: str
    value: object
    requirement: str = 'positive'
    message: str = field(default='Parameter {name} must be {requirement}, got {value}.', init=False)

    def __str__(self) -> str:
        return self.message.format(name=self.name, value=self.value, requirement=self.requirement)


@define
class SequenceLengthError(InputError):
    required: int
    received: int
    message: str = field(
        default='Sequence holds {received} vectors but {required} are required.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(required=self.required, received=self.received)


@define
class BoundExceededError(InputError):
    kind: str
    size: int
    bound: int
    message: str = field(default='{kind} needs {size} tuples, above the bound {bound}.', init=False)

    def __str__(self) -> str:
        return self.message.format(kind=self.kind, size=self.size, bound=self.bound)


@define
class FactorMismatchError(InputError):
    message: str = field(
        default='Factor maps do not share a common target system.', init=False
    )

    def __str__(self) -> str:
        return self.message


@define
class CouplingMismatchError(InputError):
    reason: str
    message: str = field(default='Coupling does not fit the given systems: {reason}.', init=False)

    def __str__(self) -> str:
        return self.message.format(reason=self.reason)


@define
class FactorMapError(PropertyError):
    reason: str
    message: str = field(default='Assignment is not a factor map: {reason}.', init=False)

    def __str__(self) -> str:
        return self.message.format(reason=self.reason)


@define
class NonInvariantPartitionError(PropertyError):
    block: int
    map_index: int
    message: str = field(
        default='Block {block} is not carried onto a block by map {map_index}.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(block=self.block, map_index=self.map_index)


@define
class NotCSystemError(PropertyError):
    role: str
    message: str = field(default='The {role} system is not a C-system.', init=False)

    def __str__(self) -> str:
        return self.message.format(role=self.role)


@define
class CouplingError(PropertyError):
    reason: str
    message: str = field(default='Measure is not a valid coupling: {reason}.', init=False)

    def __str__(self) -> str:
        return self.message.format(reason=self.reason)


@define
class PeriodCapError(PropertyError):
    period: int
    cap: int
    message: str = field(default='Period {period} exceeds the configured cap {cap}.', init=False)

    def __str__(self) -> str:
        return self.message.format(period=self.period, cap=self.cap)


@define
class ResonanceError(PropertyError):
    frequency: tuple[int, ...]
    theta: float
    message: str = field(
        default='Frequency {frequency} is resonant: phase {theta} is an integer.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(frequency=list(self.frequency), theta=self.theta)


@define
class ToleranceError(PropertyError):
    tolerance: float
    length: int
    required: int
    message: str = field(
        default='Tolerance {tolerance} is not reached at N={length}; the bound needs N={required}.',
        init=False,
    )

    def __str__(self) -> str:
        return self.message.format(
            tolerance=self.tolerance, length=self.length, required=self.required
        )


@define
class InvariantViolationError(PropertyError):
    check: str
    message: str = field(default='Internal invariant violated: {check}.', init=False)

    def __str__(self) -> str:
        return self.message.format(check=self.check)


@define
class FractionFormatError(InputError):
    text: str
    message: str = field(default='"{text}" is not a decimal-free p/q fraction string.', init=False)

    def __str__(self) -> str:
        return self.message.format(text=self.text)


@define
class SettingsError(InputError):
    variable: str
    value: str
    message: str = field(
        default='Environment variable {variable}={value!r} is invalid.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(variable=self.variable, value=self.value)


@define
class ObservableLengthError(InputError):
    points: int
    values: int
    message: str = field(
        default='Observable has {values} values on a system of {points} points.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(points=self.points, values=self.values)


@define
class MapCountError(InputError):
    operation: str
    required: int
    received: int
    message: str = field(
        default='Operation "{operation}" needs at least {required} maps, got {received}.',
        init=False,
    )

    def __str__(self) -> str:
        return self.message.format(
            operation=self.operation, required=self.required, received=self.received
        )
