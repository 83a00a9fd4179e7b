"""Immutable square matrix with optional row-sum and symmetry tags."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalars import FLOAT, RATIONAL, Backend, backend_of

__all__ = ["Matrix", "ones_vector", "unit_vector"]


def ones_vector(n, backend: Backend):
    return [backend.one] * n


def unit_vector(n, i, backend: Backend):
    v = [backend.zero] * n
    v[i] = backend.one
    return v


@dataclass(frozen=True)
class Matrix:
    """A real square matrix over one scalar backend.

    ``row_sum`` claims membership in CS_alpha (every row sums to alpha) and
    ``symmetric`` claims symmetry; both claims are checked on construction.
    """

    rows: tuple
    backend: Backend = RATIONAL
    row_sum: object = None
    symmetric: bool = False

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        if self.row_sum is not None:
            alpha = self.row_sum
            for i, r in enumerate(self.rows):
                s = sum(r, self.backend.zero)
                if not self.backend.close(s, alpha, scale=alpha):
                    raise ValueError(f"row {i} sums to {s}, not {alpha}")
        if self.symmetric:
            for i in range(n):
                for j in range(i):
                    if not self.backend.close(self.rows[i][j], self.rows[j][i], scale=1.0):
                        raise ValueError("matrix tagged symmetric is not symmetric")

    @classmethod
    def from_rows(cls, rows, backend: Backend | None = None, row_sum=None, symmetric=False):
        rows = [list(r) for r in rows]
        if backend is None:
            backend = backend_of(x for r in rows for x in r)
        conv = tuple(tuple(backend.scalar(x) for x in r) for r in rows)
        if row_sum is not None:
            row_sum = backend.scalar(row_sum)
        return cls(conv, backend, row_sum, symmetric)

    @classmethod
    def wrap(cls, rows, backend: Backend, row_sum=None, symmetric=False):
        """Build from rows that already hold backend scalars (no coercion)."""
        return cls(tuple(tuple(r) for r in rows), backend, row_sum, symmetric)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self):
        return [list(r) for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    def to_float(self) -> "Matrix":
        rs = None if self.row_sum is None else float(self.row_sum)
        return Matrix.from_rows(self.to_numpy().tolist(), FLOAT, rs, self.symmetric)

    def min_entry(self):
        return min(x for r in self.rows for x in r)

    def diagonal(self):
        return [self.rows[i][i] for i in range(self.n)]

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def computed_row_sums(self):
        return [sum(r, self.backend.zero) for r in self.rows]

    def __eq__(self, other):
        if isinstance(other, Matrix):
            return self.rows == other.rows
        try:
            return [list(r) for r in self.rows] == [list(r) for r in other]
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        width = max((len(str(x)) for r in self.rows for x in r), default=1)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)
