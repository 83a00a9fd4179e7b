"""Kellogg's criterion, the negative-list expansion and Borobia's partition criterion.

Kellogg and Borobia share one constructor. A Borobia list is a Kellogg list
whose negative entries stand for blocks of the original tail; the scaffold
below receives every entry together with the original values it stands for
and expands blocks on the fly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy.utilities.iterables import multiset_partitions

from ..errors import BadSigns, CriterionNotSatisfied, NoPartitionFound, TailTooLarge
from ..linalg import direct_sum
from ..matrix import Matrix, ones_vector
from ..perturb import brauer_update
from ._common import as_real_spectrum
from .real import realize_suleimanova

__all__ = [
    "KelloggData",
    "BorobiaPartition",
    "kellogg_data",
    "check_kellogg",
    "realize_kellogg",
    "expand_list",
    "find_borobia_partition",
    "realize_borobia",
    "BOROBIA_TAIL_CAP",
]

BOROBIA_TAIL_CAP = 12


@dataclass
class KelloggData:
    """Bookkeeping of the Kellogg construction (indices are 1-based)."""

    p: int
    K: list
    values: list
    head: list = field(default_factory=list)
    pairs: list = field(default_factory=list)
    residual: list = field(default_factory=list)
    mu: object = None
    accepted: bool = False
    violation: str | None = None

    def __bool__(self):
        return self.accepted


def kellogg_data(lam, backend) -> KelloggData:
    """Evaluate both Kellogg inequalities on a sorted real list ``lam``."""
    n = len(lam)
    L = lambda i: lam[i - 1]  # noqa: E731  (1-based view)
    p = sum(1 for v in lam if v >= 0)
    K = [i for i in range(2, (n + 1) // 2 + 1) if L(i) >= 0 and L(i) + L(n - i + 2) < 0]
    data = KelloggData(p=p, K=K, values=list(lam))
    if p == 0:
        data.violation = "no nonnegative element"
        return data
    running = backend.zero
    for k in K:
        need = -running - L(n - k + 2)
        if L(1) < need:
            data.violation = f"(Kec1) at k={k} needs lambda_1 >= {need}"
            return data
        running += L(k) + L(n - k + 2)
    if n >= 2 * p:
        need = -running - sum((L(j) for j in range(p + 1, n - p + 2)), backend.zero)
        if L(1) < need:
            data.violation = f"(Kec2) needs lambda_1 >= {need}"
            return data
    data.mu = L(1) + running
    data.head = [1] + list(range(p + 1, n - p + 2))
    kset = set(K)
    for i in range(2, n + 1):
        j = n - i + 2
        if i > j or i > p:
            break
        if i == j:
            data.residual.append((i,))
        elif i in kset:
            data.pairs.append((i, j))
        else:
            data.residual.append((i, j))
    data.accepted = True
    return data


def check_kellogg(s) -> KelloggData:
    """Kellogg data; truthy iff both inequalities hold."""
    s = as_real_spectrum(s)
    return kellogg_data(list(s.values), s.backend)


def expand_list(lambda_k, mus, backend=None) -> Matrix:
    """Matrix in CS_{lambda_k} with spectrum {lambda_k, mus...}.

    Built as the Suleimanova matrix of {-sum(mus), mus...} plus a Brauer shift
    of the Perron value placed on the last column, so every negative entry
    (if any) sits in that column and is no smaller than lambda_k + sum(mus).
    """
    from ..scalars import backend_of

    if backend is None:
        backend = backend_of([lambda_k, *mus])
    lk = backend.scalar(lambda_k)
    mus = [backend.scalar(m) for m in mus]
    if lk < 0 or not mus or any(m >= 0 for m in mus):
        raise BadSigns("need lambda_k >= 0 and a nonempty list of negatives")
    mus = sorted(mus, reverse=True)
    total = sum(mus, backend.zero)
    from ..spectra import Spectrum

    core = realize_suleimanova(Spectrum(tuple([-total, *mus]), backend))
    sigma = lk + total
    q = [backend.zero] * (len(mus) + 1)
    q[-1] = sigma
    return brauer_update(core, ones_vector(len(q), backend), q, -total)


def _block_matrix(value, members, backend):
    """Nonnegative realization of a residual entry group (pair or singleton)."""
    if len(members) == 1 and len(members[0]) == 1:
        return [[members[0][0]]]
    first, second = members
    hi = first[0]
    if len(second) == 1 and second[0] >= 0:
        z = backend.zero
        return [[hi, z], [z, second[0]]]
    return [list(r) for r in expand_list(hi, second, backend).rows]


def _scaffold(entries, data: KelloggData, backend, trace=None) -> Matrix:
    """Run the Kellogg construction on ``entries`` (value, original members) pairs."""
    b = backend
    members = lambda i: entries[i - 1][1]  # noqa: E731
    value = lambda i: entries[i - 1][0]  # noqa: E731

    head_vals = [value(1)]
    head_members = []
    for j in data.head[1:]:
        head_members.extend(members(j))
    mu = data.mu
    from ..spectra import Spectrum

    if head_members:
        b1 = realize_suleimanova(Spectrum(tuple([mu, *sorted(head_members, reverse=True)]), b))
        b1_rows = [list(r) for r in b1.rows]
    else:
        b1_rows = [[mu]]
    if trace is not None:
        trace.append({"step": "head", "criterion": "suleimanova", "perron": mu, "order": len(b1_rows)})

    # Pair blocks G_t, ..., G_1 laid out after B1' (k_1 < ... < k_t in index order).
    pairs = data.pairs
    t = len(pairs)
    blocks = []
    for i, j in pairs:
        lam_k = value(i)
        g = expand_list(lam_k, members(j), b)
        blocks.append((lam_k, value(i) + value(j), [list(r) for r in g.rows]))
    layout = list(reversed(range(t)))  # block index in layout order: t-1, ..., 0
    sizes = [len(b1_rows)] + [len(blocks[k][2]) for k in layout]
    offsets = [sum(sizes[:m]) for m in range(len(sizes))]
    n = sum(sizes)
    zero = b.zero
    rows = [[zero] * n for _ in range(n)]
    for r, row in enumerate(b1_rows):
        rows[r][: len(row)] = row
    q = [zero] * n
    designated = {}
    for pos, k in enumerate(layout, start=1):
        lam_k, sigma, g = blocks[k]
        off = offsets[pos]
        size = len(g)
        for r in range(size):
            rows[off + r][off:off + size] = g[r]
        designated[k] = off + size - 1
        q[off + size - 1] = -sigma
    last_head_col = len(b1_rows) - 1
    for pos, k in enumerate(layout, start=1):
        lam_k, sigma, g = blocks[k]
        off = offsets[pos]
        size = len(g)
        for r in range(off, off + size):
            if k == t - 1:
                rows[r][last_head_col] = mu - lam_k
            else:
                between = sum((blocks[j][1] for j in range(k + 1, t - 1)), zero)
                for j in range(k + 1, t - 1):
                    rows[r][designated[j]] = blocks[j][1]
                rows[r][designated[t - 1]] = mu - lam_k - between
    base = Matrix.wrap(rows, b, mu)
    if trace is not None:
        trace.append({"step": "brauer", "q": q, "moves": f"{mu} -> {value(1)}"})
    m = brauer_update(base, ones_vector(n, b), q, mu)

    residual_blocks = []
    for group in data.residual:
        grp_members = [members(i) for i in group]
        residual_blocks.append(_block_matrix(None, grp_members, b))
    if not residual_blocks:
        return m
    if trace is not None:
        trace.append({"step": "direct-sum", "blocks": len(residual_blocks)})
    return Matrix.wrap(direct_sum(m.rows, *residual_blocks, zero=zero), b)


def realize_kellogg(s, data: KelloggData | None = None, trace=None) -> Matrix:
    s = as_real_spectrum(s)
    if data is None:
        data = check_kellogg(s)
    if not data:
        raise CriterionNotSatisfied(f"Kellogg conditions fail: {data.violation}")
    entries = [(v, [v]) for v in s.values]
    return _scaffold(entries, data, s.backend, trace)


@dataclass
class BorobiaPartition:
    blocks: list
    merged: list
    kellogg: KelloggData = None


def _merged_entries(head, blocks, backend):
    sums = [(sum(blk, backend.zero), sorted(blk, reverse=True)) for blk in blocks]
    sums.sort(key=lambda x: -x[0])
    return [(v, [v]) for v in head] + [(total, blk) for total, blk in sums]


def find_borobia_partition(s) -> BorobiaPartition:
    """Search partitions of the negative tail, fewest blocks first."""
    s = as_real_spectrum(s)
    b = s.backend
    head = [v for v in s.values if v >= 0]
    tail = [v for v in s.values if v < 0]
    if not head:
        raise NoPartitionFound("no nonnegative element")
    if len(tail) > BOROBIA_TAIL_CAP:
        raise TailTooLarge(f"negative tail has {len(tail)} > {BOROBIA_TAIL_CAP} elements")
    if not tail:
        data = kellogg_data(head, b)
        if data:
            return BorobiaPartition([], list(head), data)
        raise NoPartitionFound("Kellogg conditions fail and there is nothing to merge")
    seen = set()
    for count in range(1, len(tail) + 1):
        for part in multiset_partitions(tail, count):
            key = tuple(sorted(sum(blk, b.zero) for blk in part))
            if key in seen:
                continue
            seen.add(key)
            entries = _merged_entries(head, part, b)
            data = kellogg_data([e[0] for e in entries], b)
            if data:
                blocks = [e[1] for e in entries[len(head):]]
                return BorobiaPartition(blocks, [e[0] for e in entries], data)
    raise NoPartitionFound("no partition of the negative tail passes the Kellogg conditions")


def realize_borobia(s, part: BorobiaPartition | None = None, trace=None) -> Matrix:
    s = as_real_spectrum(s)
    if part is None:
        part = find_borobia_partition(s)
    b = s.backend
    head = [v for v in s.values if v >= 0]
    entries = [(v, [v]) for v in head] + [
        (sum(blk, b.zero), list(blk)) for blk in part.blocks
    ]
    entries.sort(key=lambda e: -e[0])
    if trace is not None:
        trace.append({"step": "partition", "blocks": [list(blk) for blk in part.blocks]})
    data = kellogg_data([e[0] for e in entries], b)
    if not data:
        raise CriterionNotSatisfied(f"merged list fails Kellogg: {data.violation}")
    return _scaffold(entries, data, b, trace)
