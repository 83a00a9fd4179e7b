"""Complex lists whose tail lies in a left-half-plane wedge.

Two wedges are supported: |Im z| <= |Re z| and the wider |Im z| <= sqrt(3)|Re z|,
both with Re z <= 0. For either one a list is realizable exactly when its sum
is nonnegative. The realization peels two tail elements at a time and glues
a 3x3 block onto a smaller realization with a Rado update.
"""

from __future__ import annotations

import enum

from ..diag3 import construct_3x3
from ..errors import CriterionNotSatisfied, RegionViolated
from ..linalg import direct_sum
from ..matrix import Matrix
from ..perturb import RadoUpdate, rado_update
from ..spectra import Spectrum
from ._common import as_spectrum

__all__ = ["RegionTag", "in_region", "check_complex_region", "realize_complex_smigoc"]


class RegionTag(enum.Enum):
    RE_DOMINANT = "re-dominant"
    SQRT3_WEDGE = "sqrt3-wedge"


def in_region(z, kind: RegionTag) -> bool:
    re, im = z.real, getattr(z, "imag", 0)
    if re > 0:
        return False
    factor = 1 if kind is RegionTag.RE_DOMINANT else 3
    return factor * re * re >= im * im


def check_complex_region(s, kind: RegionTag = RegionTag.SQRT3_WEDGE) -> bool:
    """True iff the tail lies in the wedge and the list sum is nonnegative."""
    s = as_spectrum(s)
    return all(in_region(z, kind) for z in s.tail) and s.total >= 0


def _peel(tail):
    """Split off a conjugate pair if there is one, else the two smallest reals."""
    for idx, z in enumerate(tail):
        if getattr(z, "imag", 0):
            partner = next(j for j in range(idx + 1, len(tail)) if tail[j] == z.conjugate())
            rest = [w for j, w in enumerate(tail) if j not in (idx, partner)]
            return (z, tail[partner]), rest
    return (tail[-2], tail[-1]), list(tail[:-2])


def _realize(lead, tail, b, trace):
    zero = b.zero
    n = len(tail) + 1
    if n == 1:
        return Matrix.wrap([[lead]], b, lead)
    if n == 2:
        (low,) = tail
        plus, minus = (lead + low) / 2, (lead - low) / 2
        return Matrix.wrap([[plus, minus], [minus, plus]], b, lead)
    if n == 3:
        total = (lead + tail[0] + tail[1]).real
        return construct_3x3((total, zero, zero), (lead, *tail), b, trace=trace)
    (li, lj), rest = _peel(tail)
    merged = (lead + li + lj).real
    if trace is not None:
        trace.append({"step": "peel", "pair": [str(li), str(lj)], "merged_perron": merged})
    inner = _realize(merged, rest, b, trace)
    block = construct_3x3((merged, zero, zero), (lead, li, lj), b, trace=trace)
    k = inner.n
    base = Matrix.wrap(direct_sum(inner.rows, [[zero]], [[zero]], zero=zero), b)
    one = b.one
    X = [[one, zero, zero] for _ in range(k)] + [[zero, one, zero], [zero, zero, one]]
    B = block.rows
    C = [[zero] * (k + 2) for _ in range(3)]
    C[0][k], C[0][k + 1] = B[0][1], B[0][2]
    C[1][0], C[1][k + 1] = B[1][0], B[1][2]
    C[2][0], C[2][k] = B[2][0], B[2][1]
    update = RadoUpdate(tuple(map(tuple, X)), tuple(map(tuple, C)), (merged, zero, zero))
    return rado_update(base, update)


def realize_complex_smigoc(s, kind: RegionTag = RegionTag.SQRT3_WEDGE, trace=None) -> Matrix:
    """Nonnegative realization of a wedge list with nonnegative sum."""
    s = as_spectrum(s)
    if not all(in_region(z, kind) for z in s.tail):
        raise RegionViolated(f"tail leaves the {kind.value} region")
    if s.total < 0:
        raise CriterionNotSatisfied("the list sum is negative")
    return _realize(s.perron, list(s.tail), s.backend, trace)
