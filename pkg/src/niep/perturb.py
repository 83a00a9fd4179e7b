"""Brauer rank-one, Rado rank-r and symmetric Rado perturbations."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    EigenRelationViolated,
    InputError,
    NegativeEps,
    NotAnEigenpair,
    NotOrthonormal,
    NotSymmetric,
    RankDeficientX,
)
from .matrix import Matrix

__all__ = [
    "RadoUpdate",
    "brauer_update",
    "rado_update",
    "symmetric_rado_update",
    "shift_perron",
    "common_row_sum",
]

EIGEN_TOL = 1e-8


def common_row_sum(rows, backend):
    """The shared row sum if every row agrees (within tolerance), else ``None``."""
    if not rows:
        return None
    sums = [sum(r, backend.zero) for r in rows]
    first = sums[0]
    if all(backend.close(s, first, scale=first) for s in sums):
        return first
    return None


def _residual_ok(backend, residual, a_rows, vec_scale):
    if backend.exact:
        return all(x == 0 for x in residual)
    bound = EIGEN_TOL * max(1.0, linalg.norm_inf(a_rows)) * max(1.0, vec_scale)
    return max((abs(x) for x in residual), default=0.0) <= bound


def _coerce_vector(values, backend):
    return [backend.scalar(x) for x in values]


def brauer_update(a: Matrix, v, q, lambda_k, check: bool = True) -> Matrix:
    """Return ``A + v q^T``; ``v`` must be an eigenvector of ``A`` for ``lambda_k``.

    The eigenvalue ``lambda_k`` moves to ``lambda_k + v.q``; the rest stay put.
    """
    b = a.backend
    v = _coerce_vector(v, b)
    q = _coerce_vector(q, b)
    if len(v) != a.n or len(q) != a.n:
        raise InputError("v and q must have the order of A")
    if check:
        lam = b.scalar(lambda_k)
        av = linalg.matvec(a.rows, v)
        residual = [x - lam * y for x, y in zip(av, v)]
        if not _residual_ok(b, residual, a.rows, max((abs(float(x)) for x in v), default=0.0)):
            raise NotAnEigenpair(f"v is not an eigenvector of A for {lambda_k}")
    rows = [[x + vi * qj for x, qj in zip(row, q)] for row, vi in zip(a.rows, v)]
    row_sum = None
    if a.row_sum is not None and all(x == 1 for x in v):
        row_sum = a.row_sum + sum(q, b.zero)
    return Matrix.wrap(rows, b, row_sum)


@dataclass(frozen=True)
class RadoUpdate:
    """The (X, C, Omega) data of a Rado perturbation ``A + X C``.

    Columns of ``X`` are eigenvectors of the target matrix for ``Omega``.
    """

    X: tuple
    C: tuple
    Omega: tuple

    @classmethod
    def build(cls, X, C, Omega, backend):
        conv = lambda m: tuple(tuple(backend.scalar(x) for x in r) for r in m)
        return cls(conv(X), conv(C), tuple(backend.scalar(w) for w in Omega))

    @property
    def r(self) -> int:
        return len(self.Omega)

    def small_matrix(self):
        """``Omega + C X``, whose eigenvalues replace ``Omega`` in the spectrum."""
        cx = linalg.matmul([list(r) for r in self.C], [list(r) for r in self.X])
        for i, w in enumerate(self.Omega):
            cx[i][i] = cx[i][i] + w
        return cx


def rado_update(a: Matrix, u: RadoUpdate, check: bool = True) -> Matrix:
    """Return ``A + X C``; the eigenvalues ``Omega`` become those of ``Omega + C X``."""
    b = a.backend
    n, r = a.n, u.r
    X = [list(row) for row in u.X]
    C = [list(row) for row in u.C]
    if len(X) != n or any(len(row) != r for row in X) or len(C) != r or any(len(row) != n for row in C):
        raise InputError("X must be n-by-r and C r-by-n")
    if r > n:
        raise InputError("r must not exceed n")
    if check:
        if linalg.rank(X) != r:
            raise RankDeficientX(f"rank(X) < {r}")
        ax = linalg.matmul(a.rows, X)
        residual = [ax[i][j] - X[i][j] * u.Omega[j] for i in range(n) for j in range(r)]
        scale = max((abs(float(x)) for row in X for x in row), default=0.0)
        if not _residual_ok(b, residual, a.rows, scale):
            raise EigenRelationViolated("A X != X Omega")
    xc = linalg.matmul(X, C)
    rows = linalg.add(a.rows, xc)
    return Matrix.wrap(rows, b, common_row_sum(rows, b))


def symmetric_rado_update(a: Matrix, X, C, Omega, check: bool = True) -> Matrix:
    """Return the symmetric matrix ``A + X C X^T`` (X with orthonormal columns)."""
    bk = a.backend
    n = a.n
    X = [[bk.scalar(x) for x in row] for row in X]
    C = [[bk.scalar(x) for x in row] for row in C]
    Omega = [bk.scalar(w) for w in Omega]
    r = len(Omega)
    if check:
        rows = a.rows
        if not all(bk.close(rows[i][j], rows[j][i]) for i in range(n) for j in range(i)):
            raise NotSymmetric("A is not symmetric")
        if not all(bk.close(C[i][j], C[j][i]) for i in range(r) for j in range(i)):
            raise NotSymmetric("C is not symmetric")
        xtx = linalg.matmul(linalg.transpose(X), X)
        for i in range(r):
            for j in range(r):
                if not bk.close(xtx[i][j], bk.one if i == j else bk.zero):
                    raise NotOrthonormal("X^T X != I")
        ax = linalg.matmul(rows, X)
        residual = [ax[i][j] - X[i][j] * Omega[j] for i in range(n) for j in range(r)]
        if not _residual_ok(bk, residual, rows, 1.0):
            raise EigenRelationViolated("A X != X Omega")
    xc = linalg.matmul(X, C)
    out = [list(row) for row in a.rows]
    for i in range(n):
        for j in range(i, n):
            val = out[i][j] + sum((xc[i][k] * X[j][k] for k in range(r)), bk.zero)
            out[i][j] = val
            out[j][i] = val
    return Matrix.wrap(out, bk, common_row_sum(out, bk), symmetric=True)


def shift_perron(a: Matrix, eps, check: bool = True) -> Matrix:
    """``A + eps e e_1^T`` for ``A`` in CS_alpha: moves alpha to alpha + eps."""
    b = a.backend
    eps = b.scalar(eps)
    if eps < 0:
        raise NegativeEps(f"eps must be nonnegative, got {eps}")
    alpha = a.row_sum if a.row_sum is not None else common_row_sum(a.rows, b)
    if check:
        if alpha is None:
            raise InputError("A must have constant row sums")
        if not a.is_nonnegative():
            raise InputError("A must be nonnegative")
    if eps == 0:
        return a
    rows = [[row[0] + eps, *row[1:]] for row in a.rows]
    return Matrix.wrap(rows, b, None if alpha is None else alpha + eps)
