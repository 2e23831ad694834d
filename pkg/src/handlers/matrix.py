"""
Matrix — Dense exact matrices over a ``Field`` and reduced row echelon form.

Entries live in a numpy object array so that Python ints (mod p) and
Fractions keep arbitrary precision through every row operation.
"""
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from handlers.field import Field, Scalar
from utils.failures import MalformedInputError


class Matrix:
    """Immutable rows × cols matrix over a single field."""

    __slots__ = ("field", "rows", "cols", "_data", "_key")

    def __init__(self, field: Field, rows: int, cols: int, entries: Iterable):
        """
        Args:
            field: Field every entry belongs to.
            rows: Row count.
            cols: Column count.
            entries: Row-major raw entries, coerced with ``field.element``.
        """
        values = [field.element(x) for x in entries]
        if rows < 0 or cols < 0 or len(values) != rows * cols:
            raise MalformedInputError(
                f"matrix of shape {rows}x{cols} needs {rows * cols} entries, got {len(values)}"
            )
        data = np.empty((rows, cols), dtype=object)
        for i in range(rows):
            for j in range(cols):
                data[i, j] = values[i * cols + j]
        self._init(field, data)

    def _init(self, field: Field, data: np.ndarray):
        data.setflags(write=False)
        self.field = field
        self.rows, self.cols = data.shape
        self._data = data
        self._key = (field, self.rows, self.cols, tuple(data.flat))

    @classmethod
    def _wrap(cls, field: Field, data: np.ndarray) -> "Matrix":
        """Wrap an already-normalized object array without re-coercing entries."""
        m = cls.__new__(cls)
        m._init(field, np.array(data, dtype=object, copy=True).reshape(data.shape))
        return m

    # ── Constructors ──────────────────────────────────────────────

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int = None) -> "Matrix":
        """Build from a list of rows; ``cols`` is required when ``rows`` is empty."""
        if cols is None:
            if not rows:
                raise MalformedInputError("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise MalformedInputError(f"row {i} has {len(row)} entries, expected {cols}")
        return cls(field, len(rows), cols, [x for row in rows for x in row])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, np.full((rows, cols), field.zero, dtype=object))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        data = np.full((n, n), field.zero, dtype=object)
        for i in range(n):
            data[i, i] = field.one
        return cls._wrap(field, data)

    # ── Access ────────────────────────────────────────────────────

    @property
    def data(self) -> np.ndarray:
        """Read-only object array view."""
        return self._data

    @property
    def entries(self) -> Tuple[Scalar, ...]:
        return self._key[3]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return tuple(self._data[i])

    def to_rows(self) -> List[List[Scalar]]:
        return [list(self._data[i]) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_rows()})"

    # ── Arithmetic ────────────────────────────────────────────────

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise MalformedInputError(f"mixed-field operands: {self.field} and {other.field}")

    def matmul(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise MalformedInputError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix._wrap(self.field, self.field.normalize(self._data.dot(other._data)))

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.field, self._data.T)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise MalformedInputError(f"cannot stack {self.cols} and {other.cols} columns")
        return Matrix._wrap(self.field, np.vstack([self._data, other._data]))


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """
    Reduced row echelon form over the matrix's field.

    Returns:
        (R, pivots): R has the zero rows dropped; pivots are the pivot columns.
    """
    field = m.field
    work = np.array(m.data, dtype=object, copy=True).reshape(m.rows, m.cols)
    n_rows, n_cols = work.shape
    pivots: List[int] = []
    pivot_row = 0

    for col in range(n_cols):
        if pivot_row == n_rows:
            break
        found = -1
        for r in range(pivot_row, n_rows):
            if work[r, col] != 0:
                found = r
                break
        if found == -1:
            continue

        if found != pivot_row:
            work[[pivot_row, found]] = work[[found, pivot_row]]

        work[pivot_row] = field.normalize(work[pivot_row] * field.inv(work[pivot_row, col]))

        # Eliminate above and below
        for r in range(n_rows):
            if r != pivot_row and work[r, col] != 0:
                work[r] = field.normalize(work[r] - work[r, col] * work[pivot_row])

        pivots.append(col)
        pivot_row += 1

    reduced = work[:pivot_row].reshape(pivot_row, n_cols)
    return Matrix._wrap(field, reduced), tuple(pivots)
