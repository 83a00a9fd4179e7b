from __future__ import annotations

from ..errors import InputError
from ..matrix import Matrix
from ..spectra import Spectrum, normalize


def as_spectrum(s, backend=None) -> Spectrum:
    if isinstance(s, Spectrum):
        return s if backend is None or backend == s.backend else s.with_backend(backend)
    return normalize(s, backend, require_perron=False)


def as_real_spectrum(s, backend=None) -> Spectrum:
    s = as_spectrum(s, backend)
    if not s.is_real:
        raise InputError("this criterion applies to real lists only")
    return s


def bordered(head, tail, backend):
    """Lower-triangular matrix in CS_0 with diagonal (head, tail...) compensated in column 0.

    Row 0 is ``[head, 0, ...]`` and row i is ``-tail_i`` in column 0 plus
    ``tail_i`` on the diagonal.
    """
    n = len(tail) + 1
    zero = backend.zero
    rows = [[zero] * n for _ in range(n)]
    rows[0][0] = head
    for i, lam in enumerate(tail, start=1):
        rows[i][0] = -lam
        rows[i][i] = lam
    return rows


def finish(rows, backend, row_sum) -> Matrix:
    return Matrix.wrap(rows, backend, row_sum)
