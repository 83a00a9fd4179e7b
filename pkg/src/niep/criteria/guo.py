"""Constructive Guo bound: any tail is realized once lambda_1 = (n-1) max|lambda_j|."""

from __future__ import annotations

import math

from ..errors import InputError
from ..matrix import Matrix, ones_vector
from ..perturb import brauer_update
from ..scalars import FLOAT, abs2, backend_of, exact_sqrt
from ..spectra import normalize

__all__ = ["guo_bound", "guo_bound_realize", "order_tail"]


def order_tail(tail, backend):
    """Conjugate-closed tail ordered as reals (decreasing) then pairs (Im > 0 first)."""
    tail = [backend.value(v) for v in tail]
    if not tail:
        return []
    sentinel = backend.scalar(1 + math.ceil(sum(abs(complex(v)) for v in tail)))
    s = normalize([sentinel, *tail], backend)
    return list(s.values[1:])


def _tail_modulus(tail, backend):
    sq = max((abs2(v) for v in tail), default=backend.zero)
    if backend.exact:
        root = exact_sqrt(sq)
        if root is None:
            return None
        return root
    return math.sqrt(sq)


def guo_bound(tail, backend=None):
    """(n-1) * max tail modulus; float when the modulus is irrational."""
    tail = list(tail)
    if backend is None:
        backend = backend_of(tail)
    m = _tail_modulus([backend.value(v) for v in tail], backend)
    if m is None:
        backend = FLOAT
        m = _tail_modulus([backend.value(complex(v)) for v in tail], backend)
    return len(tail) * m


def guo_bound_realize(tail, backend=None, trace=None):
    """Return ``((n-1) m, A)`` with ``A`` nonnegative of spectrum {(n-1)m, tail}.

    The tail must contain at least one real element: that element's column
    carries the compensations of the complex blocks.
    """
    tail = list(tail)
    if backend is None:
        backend = backend_of(tail)
    b = backend
    ordered = order_tail(tail, b)
    n = len(ordered) + 1
    m = _tail_modulus(ordered, b)
    if m is None:
        if trace is not None:
            trace.append({"step": "backend", "detail": "tail modulus irrational; using floats"})
        b = FLOAT
        ordered = order_tail([complex(v) for v in ordered], b)
        m = _tail_modulus(ordered, b)
    zero = b.zero
    if m == 0:
        return zero, Matrix.wrap([[zero] * n for _ in range(n)], b, zero)
    reals = [v for v in ordered if not getattr(v, "imag", 0)]
    if not reals:
        raise InputError("the tail needs at least one real element")
    scale = (n - 1) * m
    mu = [v / scale for v in ordered]
    share = b.one / (n - 1)

    # Case analysis on where a nonnegative column can absorb the zero q entry.
    # Smallest list position >= 3 with positive real part; for a conjugate
    # pair this is the block's first column since Im > 0 comes first.
    positive_from_third = next((t for t in range(1, n - 1) if mu[t].real > 0), None)
    if all(v.real <= 0 for v in mu):
        case, comp_col, other_col = 1, 0, 1
        q = [zero] + [share] * (n - 1)
    elif positive_from_third is not None:
        case, comp_col, other_col = 2, 0, 1
        q = [share] * n
        q[positive_from_third + 1] = zero
    else:
        case, comp_col, other_col = 3, 1, 0
        q = [share] * n
        q[1] = zero

    rows = [[zero] * n for _ in range(n)]
    nr = len(reals)
    for j in range(nr):
        r = j + 1
        rows[r][r] = mu[j]
        rows[r][0 if j == 0 else comp_col] = -mu[j]
    for s in range(nr, n - 1, 2):
        x, y = mu[s].real, mu[s].imag
        r = s + 1
        rows[r][r], rows[r][r + 1] = x, -y
        rows[r + 1][r], rows[r + 1][r + 1] = y, x
        rows[r][comp_col] = -x
        rows[r + 1][comp_col] = -x
        rows[r][other_col] = rows[r][other_col] + y
        rows[r + 1][other_col] = rows[r + 1][other_col] - y
    base = Matrix.wrap(rows, b, zero)
    if trace is not None:
        trace.append({"step": "guo-case", "case": case, "q": q, "scale": scale})
    unit = brauer_update(base, ones_vector(n, b), q, zero)
    out = [[scale * x for x in row] for row in unit.rows]
    return scale, Matrix.wrap(out, b, scale)
