"""Exact integer matrix types."""

from dataclasses import dataclass, field
from numbers import Integral
from typing import Iterable, Sequence

import numpy as np

from reid_gale.errors import DimensionMismatch


def _as_int(value) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise TypeError(f"non-integer matrix entry: {value!r}")
    return int(value)


@dataclass(frozen=True)
class ZMatrix:
    """Immutable integer matrix, row-major, arbitrary precision entries."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension", rows=self.rows, cols=self.cols)
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(
                "matrix data does not match its shape", rows=self.rows, cols=self.cols,
            )

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "ZMatrix":
        data = tuple(tuple(_as_int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "ZMatrix":
        return cls.from_rows(list(zip(*columns)) if columns else [()] * rows, len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ZMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ZMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "ZMatrix":
        rows, cols = arr.shape
        return cls(rows, cols, tuple(tuple(int(x) for x in arr[i]) for i in range(rows)))

    def to_array(self) -> np.ndarray:
        """Object-dtype copy; entries stay Python ints."""
        arr = np.zeros((self.rows, self.cols), dtype=object)
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                arr[i, j] = x
        return arr

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # -- algebra ------------------------------------------------------------

    def transpose(self) -> "ZMatrix":
        return ZMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else ((),) * self.cols)

    def __matmul__(self, other: "ZMatrix") -> "ZMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                "cannot multiply matrices", left=self.shape, right=other.shape,
            )
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return ZMatrix.zeros(self.rows, other.cols)
        return ZMatrix.from_array(self.to_array() @ other.to_array())

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length does not match", cols=self.cols, length=len(vector))
        return tuple(sum(a * b for a, b in zip(r, vector)) for r in self.data)

    def select_rows(self, indices: Iterable[int]) -> "ZMatrix":
        return ZMatrix.from_rows([self.data[i] for i in indices], self.cols)

    def select_columns(self, indices: Iterable[int]) -> "ZMatrix":
        idx = list(indices)
        return ZMatrix.from_rows([[r[j] for j in idx] for r in self.data], len(idx))

    def __neg__(self) -> "ZMatrix":
        return ZMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.data))


@dataclass(frozen=True)
class SNFDecomposition:
    """U·M·V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: ZMatrix
    D: ZMatrix
    V: ZMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.data[i][i] for i in range(n) if self.D.data[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@dataclass(frozen=True)
class ExactnessReport:
    """Outcome of checking 0 -> Z^k --K--> Z^n --L--> Z^m -> 0."""

    composite_zero: bool
    kernel_injective: bool
    kernel_saturated: bool
    cokernel_free: bool
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "composite_zero": self.composite_zero,
            "kernel_injective": self.kernel_injective,
            "kernel_saturated": self.kernel_saturated,
            "cokernel_free": self.cokernel_free,
            "failures": list(self.failures),
        }
