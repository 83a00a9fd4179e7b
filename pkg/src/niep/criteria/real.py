"""Suleimanova, Ciarlet and Salzmann: single Brauer perturbations of a CS_0 matrix."""

from __future__ import annotations

from ..errors import CriterionNotSatisfied
from ..matrix import Matrix, ones_vector
from ..perturb import brauer_update
from ._common import as_real_spectrum, bordered

__all__ = [
    "check_suleimanova",
    "realize_suleimanova",
    "check_ciarlet",
    "realize_ciarlet",
    "check_salzmann",
    "realize_salzmann",
]


def _note(trace, step, **detail):
    if trace is not None:
        trace.append({"step": step, **detail})


def check_suleimanova(s) -> bool:
    s = as_real_spectrum(s)
    return all(v < 0 for v in s.values[1:]) and s.total >= 0


def realize_suleimanova(s, trace=None) -> Matrix:
    """Nonnegative matrix in CS_{lambda_1} for a list with a strictly negative tail."""
    s = as_real_spectrum(s)
    if not check_suleimanova(s):
        raise CriterionNotSatisfied("Suleimanova needs a negative tail and a nonnegative sum")
    b = s.backend
    tail = s.values[1:]
    base = Matrix.wrap(bordered(b.zero, tail, b), b, b.zero)
    # Zero out each tail diagonal and fill column 0 with the trace surplus.
    q = [s.total] + [-lam for lam in tail]
    _note(trace, "brauer", base="bordered CS_0 matrix", q=q, moves="0 -> lambda_1")
    return brauer_update(base, ones_vector(s.n, b), q, b.zero)


def check_ciarlet(s) -> bool:
    s = as_real_spectrum(s)
    lead = s.values[0]
    return all(abs(v) * s.n <= lead for v in s.values[1:])


def realize_ciarlet(s, trace=None) -> Matrix:
    s = as_real_spectrum(s)
    if not check_ciarlet(s):
        raise CriterionNotSatisfied("Ciarlet needs |lambda_k| <= lambda_1 / n")
    b = s.backend
    tail = s.values[1:]
    base = Matrix.wrap(bordered(b.zero, tail, b), b, b.zero)
    share = s.values[0] / s.n
    q = [share] * s.n
    _note(trace, "brauer", base="bordered CS_0 matrix", q=q, moves="0 -> lambda_1")
    return brauer_update(base, ones_vector(s.n, b), q, b.zero)


def check_salzmann(s) -> bool:
    s = as_real_spectrum(s)
    lam, n = s.values, s.n
    total = s.total
    if total < 0:
        return False
    bound = 2 * total / n
    # 1-based k = 2 .. floor((n+1)/2) pairs lam[k] with lam[n-k+1]
    return all(lam[k - 1] + lam[n - k] <= bound for k in range(2, (n + 1) // 2 + 1))


def _salzmann_trace_zero(lam, b):
    """Nonnegative matrix for a sorted trace-zero list meeting the pair conditions."""
    n = len(lam)
    zero = b.zero
    if n == 1:
        return [[zero]], [zero]
    h = n // 2
    rows = [[zero] * n for _ in range(n)]
    q = [zero] * n
    last = lam[n - 1]
    rows[1][0] = -last
    rows[1][1] = last
    q[1] = -last
    for k in range(2, h + 1):
        hi, lo = lam[k - 1], lam[n - k]
        pair = hi + lo
        r0, r1 = 2 * k - 2, 2 * k - 1
        rows[r0][r1] = hi
        rows[r1][r0] = -lo
        rows[r1][r1] = pair
        rows[r0][1] = -hi
        rows[r1][1] = -hi
        q[r1] = -pair
    if n % 2:
        mid = lam[h]
        rows[n - 1][n - 1] = mid
        rows[n - 1][1] = -mid
        q[n - 1] = -mid
    return rows, q


def realize_salzmann(s, trace=None) -> Matrix:
    """Realize via the trace-zero block construction, then add (sum/n) I."""
    s = as_real_spectrum(s)
    if not check_salzmann(s):
        raise CriterionNotSatisfied("Salzmann pair conditions fail")
    b = s.backend
    n = s.n
    shift = s.total / n
    centred = [v - shift for v in s.values]
    rows, q = _salzmann_trace_zero(centred, b)
    base = Matrix.wrap(rows, b, b.zero)
    _note(trace, "brauer", base="block CS_0 matrix of the trace-zero list", q=q, moves="0 -> lambda_1 - sum/n")
    m = brauer_update(base, ones_vector(n, b), q, b.zero)
    if shift == 0:
        return m
    _note(trace, "identity-shift", amount=shift)
    out = [list(r) for r in m.rows]
    for i in range(n):
        out[i][i] = out[i][i] + shift
    return Matrix.wrap(out, b, m.row_sum + shift)
