"""Constructions that merge matrices or move eigenvalues between them."""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .errors import (
    DegenerateEigenvector,
    EpsTooSmall,
    InputError,
    Lambda2NotReal,
    NegativeEps,
    NotAnEigenvalue,
    NotSymmetric,
    NotUnit,
    OrderViolated,
    PerronExceedsCorner,
)
from .matrix import Matrix, ones_vector, unit_vector
from .perturb import RadoUpdate, brauer_update, common_row_sum, rado_update, symmetric_rado_update
from .scalars import FLOAT, exact_sqrt

__all__ = [
    "eigenvector",
    "guo_eps_perturb",
    "merge_lists_eps",
    "smigoc_glue",
    "fiedler_couple",
    "fiedler_eps",
]

INVERSE_ITERATION_STEPS = 50


def eigenvector(a: Matrix, lam):
    """An eigenvector of ``a`` for the real eigenvalue ``lam``.

    Exact null-space basis vector in rational mode; shifted inverse iteration
    from a fixed seed in float mode.
    """
    b = a.backend
    n = a.n
    if b.exact:
        shifted = [[x - (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(a.rows)]
        basis = linalg.nullspace(shifted, b.one, b.zero)
        if not basis:
            raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
        return basis[0]
    arr = a.to_numpy()
    lam = float(lam)
    eta = 1e-8 * max(1.0, abs(lam))
    shifted = arr - (lam + eta) * np.eye(n)
    x = np.random.default_rng(0).standard_normal(n)
    for _ in range(INVERSE_ITERATION_STEPS):
        try:
            y = np.linalg.solve(shifted, x)
        except np.linalg.LinAlgError:
            break
        y /= np.linalg.norm(y)
        done = np.linalg.norm(y - x) < 1e-14 or np.linalg.norm(y + x) < 1e-14
        x = y
        if done:
            break
    residual = np.linalg.norm(arr @ x - lam * x, ord=np.inf)
    if residual > 1e-8 * max(1.0, np.linalg.norm(arr, ord=np.inf)):
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue (residual {residual:.3g})")
    return [float(v) for v in x]


def guo_eps_perturb(a: Matrix, lambda2, eps, sign: str = "+", trace=None) -> Matrix:
    """Move (lambda_1, lambda_2) to (lambda_1 + eps, lambda_2 +/- eps) keeping nonnegativity.

    ``a`` must be nonnegative with constant row sums lambda_1.
    """
    b = a.backend
    if getattr(lambda2, "imag", 0):
        raise Lambda2NotReal("lambda_2 must be real")
    lam2 = b.scalar(lambda2)
    eps = b.scalar(eps)
    if eps < 0:
        raise NegativeEps("eps must be nonnegative")
    if sign not in ("+", "-"):
        raise InputError("sign must be '+' or '-'")
    alpha = a.row_sum if a.row_sum is not None else common_row_sum(a.rows, b)
    if alpha is None or not a.is_nonnegative():
        raise InputError("A must be nonnegative with constant row sums")
    if eps == 0:
        return a
    x = eigenvector(a, lam2)
    if max(x) < 0:
        x = [-v for v in x]
    i_max = max(range(a.n), key=x.__getitem__)
    i_min = min(range(a.n), key=x.__getitem__)
    x1, x2 = x[i_max], x[i_min]
    d = x1 - x2
    if d == 0 or (not b.exact and d <= 1e-12 * max(abs(v) for v in x)):
        raise DegenerateEigenvector("eigenvector is parallel to e (lambda_2 = lambda_1?)")
    zero = b.zero
    c = [[zero] * a.n for _ in range(2)]
    if sign == "+":
        c[0][i_max], c[0][i_min] = -eps * x2 / d, eps * x1 / d
        c[1][i_max], c[1][i_min] = eps / d, -eps / d
    else:
        c[0][i_max], c[0][i_min] = eps * x1 / d, -eps * x2 / d
        c[1][i_max], c[1][i_min] = -eps / d, eps / d
    X = tuple((b.one, xi) for xi in x)
    if trace is not None:
        trace.append({"step": "rado", "r": 2, "columns": [i_max, i_min], "sign": sign, "eps": eps})
    out = rado_update(a, RadoUpdate(X, tuple(map(tuple, c)), (alpha, lam2)))
    if not b.exact:
        # XC is nonnegative in exact arithmetic; clear rounding-level negatives
        rows = [[0.0 if -1e-12 * max(1.0, abs(float(alpha))) < v < 0 else v for v in r] for r in out.rows]
        out = Matrix.wrap(rows, b, common_row_sum(rows, b))
    return out


def merge_lists_eps(a1: Matrix, a2: Matrix, eps, trace=None) -> Matrix:
    """Realize {alpha_1 + eps, beta_1 - eps} plus both tails from A1 in CS_alpha1, A2 in CS_beta1."""
    b = a1.backend
    eps = b.scalar(eps)
    alpha = a1.row_sum if a1.row_sum is not None else common_row_sum(a1.rows, b)
    beta = a2.row_sum if a2.row_sum is not None else common_row_sum(a2.rows, b)
    if alpha is None or beta is None:
        raise InputError("both matrices need constant row sums")
    if eps < 0 or eps < beta - alpha:
        raise EpsTooSmall(f"eps must be at least max(beta_1 - alpha_1, 0) = {max(beta - alpha, 0)}")
    m, n = a2.n, a1.n
    size = m + n
    zero = b.zero
    rows = [[zero] * size for _ in range(size)]
    for i in range(m):
        rows[i][:m] = a2.rows[i]
        rows[i][0] = rows[i][0] - eps
        rows[i][m] = alpha - beta + eps
    for i in range(n):
        rows[m + i][m:] = a1.rows[i]
    base = Matrix.wrap(rows, b, alpha)
    if trace is not None:
        trace.append({"step": "merge", "eps": eps})
        trace.append({"step": "brauer", "q": "eps e_1", "moves": f"{alpha} -> {alpha + eps}"})
    return brauer_update(base, ones_vector(size, b), [eps * x for x in unit_vector(size, 0, b)], alpha)


def _permute(rows, perm):
    return [[rows[perm[i]][perm[j]] for j in range(len(perm))] for i in range(len(perm))]


def smigoc_glue(a: Matrix, b_mat: Matrix, corner: int | None = None, trace=None) -> Matrix:
    """Glue A (corner diagonal entry c) with B in CS_{lambda_1}, lambda_1 <= c.

    Returns an (n+m-1)-square nonnegative matrix whose spectrum is that of A
    together with the non-Perron eigenvalues of B.
    """
    bk = a.backend
    n, m = a.n, b_mat.n
    if corner is not None and corner != n - 1:
        perm = list(range(n))
        perm[corner], perm[n - 1] = perm[n - 1], perm[corner]
        a = Matrix.wrap(_permute(a.rows, perm), bk, a.row_sum)
        if trace is not None:
            trace.append({"step": "permute-corner", "swap": [corner, n - 1]})
    lam1 = b_mat.row_sum if b_mat.row_sum is not None else common_row_sum(b_mat.rows, bk)
    if lam1 is None:
        raise InputError("B must have constant row sums")
    c = a.rows[n - 1][n - 1]
    if lam1 > c:
        raise PerronExceedsCorner(f"Perron value {lam1} of B exceeds the corner entry {c}")
    diag = b_mat.diagonal()
    top = max(diag)
    pos = max(i for i in range(m) if diag[i] == top)
    brows = b_mat.rows
    if pos != m - 1:
        perm = list(range(m))
        perm[pos], perm[m - 1] = perm[m - 1], perm[pos]
        brows = _permute(brows, perm)
    eps = c - lam1
    shifted = brauer_update(
        Matrix.wrap(brows, bk, lam1), ones_vector(m, bk), [eps * x for x in unit_vector(m, m - 1, bk)], lam1
    )
    size = n + m - 1
    zero = bk.zero
    base = [[zero] * size for _ in range(size)]
    for i in range(n - 1):
        base[i][i] = a.rows[i][i]
    for i in range(m):
        base[n - 1 + i][n - 1:] = shifted.rows[i]
    X = [[zero] * n for _ in range(size)]
    for i in range(n - 1):
        X[i][i] = bk.one
    for i in range(n - 1, size):
        X[i][n - 1] = bk.one
    C = [[zero] * size for _ in range(n)]
    for i in range(n):
        for j in range(n - 1):
            if i != j:
                C[i][j] = a.rows[i][j]
    for i in range(n - 1):
        C[i][n - 1] = a.rows[i][n - 1]
    omega = tuple(a.rows[i][i] for i in range(n))
    if trace is not None:
        trace.append({"step": "brauer", "detail": "raise B's Perron value to the corner", "eps": eps})
        trace.append({"step": "rado", "r": n})
    return rado_update(Matrix.wrap(base, bk), RadoUpdate(tuple(map(tuple, X)), tuple(map(tuple, C)), omega))


def _check_unit(vec, b):
    norm2 = sum((x * x for x in vec), b.zero)
    if b.exact:
        ok = norm2 == 1
    else:
        ok = abs(math.sqrt(norm2) - 1.0) <= 1e-9
    if not ok:
        raise NotUnit("eigenvector must have unit length")


def _rayleigh(a: Matrix, u):
    au = linalg.matvec(a.rows, u)
    return sum((x * y for x, y in zip(u, au)), a.backend.zero)


def fiedler_couple(a: Matrix, b_mat: Matrix, u, v, rho, trace=None) -> Matrix:
    """[[A, rho u v^T], [rho v u^T, B]] through a rank-two symmetric Rado update."""
    bk = a.backend if a.backend == b_mat.backend else FLOAT
    if bk is FLOAT and a.backend != b_mat.backend:
        a, b_mat = a.to_float(), b_mat.to_float()
    u = [bk.scalar(x) for x in u]
    v = [bk.scalar(x) for x in v]
    rho = bk.scalar(rho)
    for mat in (a, b_mat):
        if not all(bk.close(mat.rows[i][j], mat.rows[j][i]) for i in range(mat.n) for j in range(i)):
            raise NotSymmetric("both blocks must be symmetric")
    _check_unit(u, bk)
    _check_unit(v, bk)
    alpha, beta = _rayleigh(a, u), _rayleigh(b_mat, v)
    m, n = a.n, b_mat.n
    zero = bk.zero
    base = Matrix.wrap(linalg.direct_sum(a.rows, b_mat.rows, zero=zero), bk, symmetric=True)
    X = [[x, zero] for x in u] + [[zero, y] for y in v]
    C = [[zero, rho], [rho, zero]]
    if trace is not None:
        trace.append({"step": "symmetric-rado", "rho": rho, "omega": [alpha, beta]})
    try:
        return symmetric_rado_update(base, X, C, (alpha, beta))
    except InputError as exc:
        from .errors import EigenRelationViolated, NotAnEigenpair

        if isinstance(exc, EigenRelationViolated):
            raise NotAnEigenpair("u, v must be eigenvectors of A, B") from exc
        raise


def _perron_unit(mat: Matrix):
    """Perron value and unit Perron vector (exact if the row sums are constant and sqrt(n) rational)."""
    b = mat.backend
    alpha = common_row_sum(mat.rows, b)
    if alpha is not None:
        if b.exact:
            root = exact_sqrt(mat.n)
            if root is not None:
                return alpha, [b.one / root] * mat.n
        return float(alpha), [1.0 / math.sqrt(mat.n)] * mat.n
    vals, vecs = np.linalg.eigh(mat.to_numpy())
    vec = vecs[:, -1]
    if vec.sum() < 0:
        vec = -vec
    return float(vals[-1]), [float(max(x, 0.0)) for x in vec]


def fiedler_eps(a: Matrix, b_mat: Matrix, eps, trace=None) -> Matrix:
    """Symmetric nonnegative realization of {alpha_1 + eps, beta_1 - eps} plus both tails."""
    bk = a.backend
    eps = bk.scalar(eps)
    if eps < 0:
        raise NegativeEps("eps must be nonnegative")
    for mat in (a, b_mat):
        if not all(bk.close(mat.rows[i][j], mat.rows[j][i]) for i in range(mat.n) for j in range(i)):
            raise NotSymmetric("both blocks must be symmetric")
    alpha, u = _perron_unit(a)
    beta, v = _perron_unit(b_mat)
    if alpha < beta:
        raise OrderViolated(f"alpha_1 = {alpha} < beta_1 = {beta}")
    rho_sq = eps * (eps + alpha - beta)
    zero = bk.zero
    if eps == 0:
        return Matrix.wrap(linalg.direct_sum(a.rows, b_mat.rows, zero=zero), bk, symmetric=True)
    if bk.exact and alpha is not None and isinstance(u[0], type(bk.one)) and isinstance(v[0], type(bk.one)):
        rho = exact_sqrt(rho_sq)
        if rho is not None:
            return fiedler_couple(a, b_mat, u, v, rho, trace)
    if bk.exact and common_row_sum(a.rows, bk) is not None and common_row_sum(b_mat.rows, bk) is not None:
        # u v^T = J / sqrt(mn): the coupling block is exact when rho^2 / (mn) is a rational square
        kappa = exact_sqrt(rho_sq / (a.n * b_mat.n))
        if kappa is not None:
            if trace is not None:
                trace.append({"step": "symmetric-rado", "rho_squared": rho_sq, "block_entry": kappa})
            m, n = a.n, b_mat.n
            rows = linalg.direct_sum(a.rows, b_mat.rows, zero=zero)
            for i in range(m):
                for j in range(m, m + n):
                    rows[i][j] = kappa
                    rows[j][i] = kappa
            return Matrix.wrap(rows, bk, symmetric=True)
    fa, fb = a.to_float(), b_mat.to_float()
    rho = math.sqrt(float(rho_sq))
    if trace is not None:
        trace.append({"step": "backend", "detail": "irrational coupling; using floats"})
    return fiedler_couple(fa, fb, [float(x) for x in u], [float(x) for x in v], rho, trace)
