"""Rado pipeline: split off three eigenvalues and glue Suleimanova blocks through a 3x3 matrix.

For {6,3,3,-5,-5} the first grouping that works is {-5}, {-5}, {} with
diagonal (5, 5, 2). It yields the blocks [[0,5],[5,0]], [[0,5],[5,0]], [2],
the 3x3 matrix [[5,0,1],[1,5,0],[0,4,2]] and finally a 5x5 nonnegative
realization of the whole list.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..diag3 import DiagonalSpec, check_perfect_conditions, construct_3x3
from ..errors import CriterionNotSatisfied, InputError
from ..linalg import direct_sum
from ..matrix import Matrix
from ..perturb import RadoUpdate, rado_update
from ..spectra import Spectrum
from ._common import as_spectrum
from .real import realize_suleimanova

__all__ = ["RadoConstruction", "find_rado_grouping", "check_rado", "rado_pipeline", "realize_rado"]

MAX_REST = 10


@dataclass
class RadoConstruction:
    head: tuple
    groups: list
    omega: tuple
    blocks: list = None
    A: Matrix = None
    B: Matrix = None
    X: list = None
    C: list = None
    M: Matrix = None


def _groupings(items, parts=3):
    """Set partitions of ``items`` into at most ``parts`` blocks (restricted growth order)."""
    n = len(items)
    if n == 0:
        yield [[] for _ in range(parts)]
        return
    labels = [0] * n

    def rec(i, used):
        if i == n:
            groups = [[] for _ in range(parts)]
            for item, lab in zip(items, labels):
                groups[lab].append(item)
            yield groups
            return
        for lab in range(min(used + 1, parts)):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    yield from rec(0, 0)


def _water_fill(lows, total):
    """Most even vector with coordinates >= ``lows`` and the given sum."""
    order = sorted(range(len(lows)), key=lambda i: lows[i])
    srt = [lows[i] for i in order]
    for k in range(len(srt), 0, -1):
        level = (total - sum(srt[k:], 0 * total)) / k
        if level >= srt[k - 1] and (k == len(srt) or level <= srt[k]):
            out = list(lows)
            for i in order[:k]:
                out[i] = level
            return out
    return None


def _omega_candidates(lows, total, second):
    yield _water_fill(lows, total)
    for j in range(len(lows)):
        raised = list(lows)
        if raised[j] < second:
            raised[j] = second
            yield _water_fill(raised, total)


def find_rado_grouping(s):
    """First grouping of the tail and diagonal that the 3x3 conditions accept, else ``None``."""
    s = as_spectrum(s)
    if s.n < 3:
        return None
    b = s.backend
    head = s.values[:3]
    rest = list(s.values[3:])
    if any(getattr(v, "imag", 0) or v >= 0 for v in rest) or len(rest) > MAX_REST:
        return None
    if any(getattr(v, "imag", 0) for v in head[1:]) and head[1].conjugate() != head[2]:
        return None
    lead = head[0]
    total = sum((v.real for v in head), b.zero)
    second = head[1].real
    try:
        DiagonalSpec.of((b.zero,) * 3, head, b)
    except InputError:
        return None
    for groups in _groupings(rest):
        lows = [-sum(g, b.zero) for g in groups]
        if sum(lows, b.zero) > total:
            continue
        for omega in _omega_candidates(lows, total, second):
            if omega is None:
                continue
            spec = DiagonalSpec.of(omega, head, b)
            if check_perfect_conditions(spec):
                return RadoConstruction(tuple(head), groups, tuple(omega))
    return None


def check_rado(s) -> bool:
    return find_rado_grouping(s) is not None


def rado_pipeline(s, trace=None) -> RadoConstruction:
    """Run the whole construction and keep every intermediate matrix."""
    s = as_spectrum(s)
    plan = find_rado_grouping(s)
    if plan is None:
        raise CriterionNotSatisfied("no grouping of the tail meets the 3x3 diagonal conditions")
    b = s.backend
    zero, one = b.zero, b.one
    blocks = []
    for w, g in zip(plan.omega, plan.groups):
        if g:
            blocks.append(realize_suleimanova(Spectrum(tuple([w, *sorted(g, reverse=True)]), b)))
        else:
            blocks.append(Matrix.wrap([[w]], b, w))
    a = Matrix.wrap(direct_sum(*(blk.rows for blk in blocks), zero=zero), b)
    big_b = construct_3x3(DiagonalSpec.of(plan.omega, plan.head, b), trace=trace)
    n = a.n
    starts, off = [], 0
    for blk in blocks:
        starts.append(off)
        off += blk.n
    X = [[zero] * 3 for _ in range(n)]
    for k, blk in enumerate(blocks):
        for r in range(starts[k], starts[k] + blk.n):
            X[r][k] = one
    C = [[zero] * n for _ in range(3)]
    for k in range(3):
        for j in range(3):
            if j != k:
                C[k][starts[j]] = big_b.rows[k][j]
    if trace is not None:
        trace.append({"step": "groups", "groups": [list(g) for g in plan.groups], "omega": list(plan.omega)})
        trace.append({"step": "rado", "r": 3})
    update = RadoUpdate(tuple(map(tuple, X)), tuple(map(tuple, C)), plan.omega)
    m = rado_update(a, update)
    plan.blocks, plan.A, plan.B, plan.X, plan.C, plan.M = blocks, a, big_b, X, C, m
    return plan


def realize_rado(s, trace=None) -> Matrix:
    return rado_pipeline(s, trace).M
