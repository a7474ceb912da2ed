from attrs import define, field


@define
class ShapeError(Exception):
    rows: int
    columns: int
    message: str = field(
        default='Constraint matrix has {rows} rows but {columns} right-hand sides.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(rows=self.rows, columns=self.columns)


@define
class InfeasibleError(Exception):
    residual: object
    message: str = field(
        default='Linear program is infeasible (phase one residual {residual}).', init=False
    )

    def __str__(self) -> str:
        return self.message.format(residual=self.residual)


@define
class UnboundedError(Exception):
    column: int
    message: str = field(
        default='Linear program is unbounded along column {column}.', init=False
    )

    def __str__(self) -> str:
        return self.message.format(column=self.column)


@define
class VertexLimitError(Exception):
    kind: str
    size: int
    limit: int
    message: str = field(
        default='Vertex enumeration refused: {size} {kind} exceeds the limit {limit}.',
        init=False,
    )

    def __str__(self) -> str:
        return self.message.format(kind=self.kind, size=self.size, limit=self.limit)
