"""Small dense linear algebra on lists of lists, generic over the scalar type.

Exact scalars (``mpq``, :class:`~niep.scalars.QComplex`) use plain Gaussian
elimination with any nonzero pivot.  Floats use partial pivoting with a
relative zero threshold.
"""

from __future__ import annotations

import numpy as np

FLOAT_PIVOT_TOL = 1e-10


def _is_exact(x) -> bool:
    return not isinstance(x, (float, complex))


def zeros(n, m=None, zero=0):
    m = n if m is None else m
    return [[zero] * m for _ in range(n)]


def identity(n, one=1, zero=0):
    out = zeros(n, n, zero)
    for i in range(n):
        out[i][i] = one
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a, c):
    return [[c * x for x in row] for row in a]


def matmul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col)), start=0 * row[0]) for col in bt])
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), start=0 * v[0]) for row in a]


def outer(u, v):
    return [[x * y for y in v] for x in u]


def direct_sum(*blocks, zero=0):
    n = sum(len(b) for b in blocks)
    out = zeros(n, n, zero)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            out[off + i][off:off + k] = list(b[i])
        off += k
    return out


def norm_inf(a) -> float:
    return max((sum(abs(x) for x in row) for row in a), default=0.0)


def _row_echelon(a):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    exact = all(_is_exact(x) for r in m for x in r)
    thresh = 0.0
    if not exact:
        thresh = FLOAT_PIVOT_TOL * max(1.0, max((abs(x) for r in m for x in r), default=0.0))
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        if exact:
            piv = next((i for i in range(r, nrows) if m[i][c]), None)
        else:
            piv = max(range(r, nrows), key=lambda i: abs(m[i][c]))
            if abs(m[piv][c]) <= thresh:
                piv = None
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    if not a or not a[0]:
        return 0
    return len(_row_echelon(a)[1])


def nullspace(a, one=1, zero=0):
    """Basis of the right null space, one vector per free column, in column order."""
    ncols = len(a[0])
    rref, pivots = _row_echelon(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(a, one=1, zero=0):
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n, one, zero))]
    rref, pivots = _row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rref[:n]]


def solve(a, b, one=1, zero=0):
    """Solve ``a x = b`` for square nonsingular ``a`` and vector ``b``."""
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    n = len(a)
    rref, pivots = _row_echelon(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n] for row in rref]


def to_array(a) -> np.ndarray:
    """Float (or complex) numpy copy of an exact or float matrix."""
    if any(getattr(x, "imag", 0) for r in a for x in r):
        return np.array([[complex(float(x.real), float(x.imag)) for x in r] for r in a])
    return np.array([[float(x) for x in r] for r in a], dtype=float)
