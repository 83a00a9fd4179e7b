"""Jordan forms allowed by a list and Minc-style realizations of each one.

Starting from a positive diagonalizable realization ``A = S D S^-1``, a
nilpotent perturbation ``eps * S N S^-1`` (``N`` a sum of superdiagonal unit
matrices inside each requested block) keeps the spectrum, keeps positivity
for small ``eps`` and produces any coarser Jordan structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sympy.utilities.iterables import partitions

from . import linalg
from .errors import (
    ComplexPerturbation,
    EpsTooLarge,
    IllConditioned,
    InputError,
    NiepError,
    NotDiagonalizable,
    PositiveRealizationNotFound,
    RankChainInconsistent,
)
from .matrix import Matrix, ones_vector
from .perturb import brauer_update, common_row_sum
from .scalars import QComplex
from .spectra import Spectrum, normalize

__all__ = [
    "JordanSpec",
    "Diagonalization",
    "UniversalResult",
    "enumerate_jordan_forms",
    "eigen_basis",
    "minc_realize",
    "jordan_structure",
    "rank_chain",
    "balance_columns",
    "positive_diagonalizable_realization",
    "universal_realize",
]

AUTO = "auto"
CONDITION_LIMIT = 1e12
RANK_REL_TOL = 1e-7
NULL_REL_TOL = 1e-8


def _distinct(s: Spectrum):
    """Distinct values with multiplicities, in list order."""
    out = []
    for v in s.values:
        for entry in out:
            if entry[0] == v or (not s.backend.exact and abs(complex(entry[0]) - complex(v)) <= 1e-9 * max(1.0, abs(v))):
                entry[1] += 1
                break
        else:
            out.append([v, 1])
    return [(v, k) for v, k in out]


def _partitions_of(k):
    """Integer partitions of ``k`` as nonincreasing tuples, ascending lexicographic order."""
    parts = [tuple(sorted((size for size, cnt in p.items() for _ in range(cnt)), reverse=True)) for p in partitions(k)]
    return sorted(parts)


@dataclass(frozen=True)
class JordanSpec:
    """Block sizes per distinct eigenvalue; conjugates carry the same partition."""

    blocks: tuple  # ((eigenvalue, partition), ...)

    def partition(self, lam):
        for v, part in self.blocks:
            if v == lam:
                return part
        raise KeyError(lam)

    @property
    def is_diagonal(self) -> bool:
        return all(max(part) == 1 for _, part in self.blocks)

    def describe(self) -> str:
        return "; ".join(f"{v}: {'+'.join(map(str, part))}" for v, part in self.blocks)


def enumerate_jordan_forms(s) -> list:
    """Every Jordan structure compatible with the multiplicities of ``s``."""
    if not isinstance(s, Spectrum):
        s = normalize(s, require_perron=False)
    distinct = _distinct(s)
    reps = [(v, k) for v, k in distinct if not getattr(v, "imag", 0) or v.imag > 0]
    forms = [[]]
    for v, k in reps:
        forms = [f + [(v, p)] for f in forms for p in _partitions_of(k)]
    out = []
    for chosen in forms:
        lookup = dict(chosen)
        blocks = []
        for v, _ in distinct:
            key = v if not getattr(v, "imag", 0) or v.imag > 0 else v.conjugate()
            blocks.append((v, lookup[key]))
        out.append(JordanSpec(tuple(blocks)))
    return out


@dataclass
class Diagonalization:
    """Eigenvector matrix ``S`` (columns) grouped by eigenvalue.

    ``groups`` maps column ranges to eigenvalues: ``[(lam, [col, ...]), ...]``.
    Conjugate eigenvalues have conjugate columns in matching positions.
    """

    S: list
    order: list
    groups: list = field(default_factory=list)
    exact: bool = True

    def columns_of(self, lam):
        for v, cols in self.groups:
            if v == lam:
                return cols
        raise KeyError(lam)


def _exact_null(a: Matrix, lam):
    n = a.n
    one, zero = a.backend.one, a.backend.zero
    if getattr(lam, "imag", 0):
        one, zero = QComplex(one), QComplex(zero)
    shifted = [[a.rows[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    return linalg.nullspace(shifted, one, zero)


def _float_null(arr, lam, mult):
    shifted = arr - complex(lam) * np.eye(arr.shape[0]) if getattr(lam, "imag", 0) else arr - float(lam) * np.eye(arr.shape[0])
    _, sig, vh = np.linalg.svd(shifted)
    scale = max(1.0, float(np.abs(arr).max()))
    null = [vh[-k - 1].conj() for k in range(mult) if sig[-k - 1] <= NULL_REL_TOL * scale]
    return null[::-1]


def eigen_basis(a: Matrix, s) -> Diagonalization:
    """Eigenvector basis of a diagonalizable ``a`` whose spectrum ``s`` is known."""
    if not isinstance(s, Spectrum):
        s = normalize(s, a.backend, require_perron=False)
    if s.n != a.n:
        raise InputError("spectrum and matrix sizes differ")
    exact = a.backend.exact and s.backend.exact
    arr = None if exact else a.to_numpy()
    columns, order, groups = [], [], []
    done = {}
    for lam, mult in _distinct(s):
        conj_rep = getattr(lam, "imag", 0) and lam.imag < 0
        if conj_rep:
            basis = [[x.conjugate() for x in vec] for vec in done[lam.conjugate()]]
        elif exact:
            basis = _exact_null(a, lam)
        else:
            basis = [list(v) for v in _float_null(arr, lam, mult)]
        if len(basis) < mult:
            raise NotDiagonalizable(f"eigenvalue {lam} has {len(basis)} independent eigenvectors, needs {mult}")
        basis = basis[:mult]
        done[lam] = basis
        start = len(columns)
        columns.extend(basis)
        order.extend([lam] * mult)
        groups.append((lam, list(range(start, start + mult))))
    S = linalg.transpose(columns)
    if not exact:
        cond = np.linalg.cond(np.array(S, dtype=complex))
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise IllConditioned(f"eigenvector matrix condition number {cond:.3g}")
        D = np.diag([complex(v) for v in order])
        Sa = np.array(S, dtype=complex)
        if np.abs(arr @ Sa - Sa @ D).max() > 1e-8 * max(1.0, np.abs(arr).max()):
            raise NotDiagonalizable("eigenvector residual too large")
    return Diagonalization(S, order, groups, exact)


def _nilpotent_links(d: Diagonalization, target: JordanSpec):
    """Pairs (i, j) with N[i][j] = 1: consecutive columns inside each target block."""
    links = []
    for lam, cols in d.groups:
        part = target.partition(lam)
        if sum(part) != len(cols):
            raise InputError(f"target partition {part} does not match multiplicity of {lam}")
        pos = 0
        for size in part:
            links.extend((cols[pos + k], cols[pos + k + 1]) for k in range(size - 1))
            pos += size
    return links


def _perturbation(a: Matrix, d: Diagonalization, links):
    n = a.n
    if d.exact:
        complex_s = any(isinstance(x, QComplex) for row in d.S for x in row)
        one = QComplex(1) if complex_s else a.backend.one
        zero = QComplex(0) if complex_s else a.backend.zero
        S = [[x if not complex_s or isinstance(x, QComplex) else QComplex(x) for x in row] for row in d.S]
        s_inv = linalg.inverse(S, one, zero)
        sn = [[zero] * n for _ in range(n)]
        for i, j in links:
            for r in range(n):
                sn[r][j] = sn[r][j] + S[r][i]
        p = linalg.matmul(sn, s_inv)
        if complex_s:
            if any(x.imag != 0 for row in p for x in row):
                raise ComplexPerturbation("S N S^-1 is not real")
            p = [[x.real for x in row] for row in p]
        return p
    S = np.array(d.S, dtype=complex)
    N = np.zeros((n, n))
    for i, j in links:
        N[i, j] = 1.0
    p = S @ N @ np.linalg.inv(S)
    if np.abs(p.imag).max(initial=0.0) > 1e-8 * max(1.0, np.abs(p).max(initial=0.0)):
        raise ComplexPerturbation("S N S^-1 is not real")
    return [[float(x) for x in row] for row in p.real]


def minc_realize(a: Matrix, d: Diagonalization, target: JordanSpec, eps=AUTO) -> Matrix:
    """Positive matrix with the spectrum of ``a`` and Jordan structure ``target``."""
    b = a.backend
    if not a.min_entry() > 0:
        raise InputError("A must be entrywise positive")
    links = _nilpotent_links(d, target)
    if not links:
        return a
    p = _perturbation(a, d, links)
    norm = linalg.norm_inf(p)
    if eps == AUTO:
        eps = a.min_entry() / (2 * max(b.one, b.scalar(norm)))
    else:
        eps = b.scalar(eps)
        if eps <= 0:
            raise InputError("eps must be positive")
    rows = [[x + eps * y for x, y in zip(ra, rp)] for ra, rp in zip(a.rows, p)]
    m = Matrix.wrap(rows, b)
    if not m.min_entry() > 0:
        raise EpsTooLarge(f"eps = {eps} destroys positivity")
    return m


def _rank(rows, exact):
    if exact:
        return linalg.rank(rows)
    arr = np.array(rows, dtype=complex)
    sig = np.linalg.svd(arr, compute_uv=False)
    if sig.size == 0 or sig[0] == 0:
        return 0
    return int((sig > RANK_REL_TOL * sig[0]).sum())


def rank_chain(m: Matrix, lam, mult: int) -> list:
    """Ranks of ``(M - lam I)^k`` for k = 0..mult."""
    n = m.n
    exact = m.backend.exact and not isinstance(lam, (float, complex))
    if exact:
        is_c = bool(getattr(lam, "imag", 0))
        conv = (lambda x: QComplex(x)) if is_c else (lambda x: x)
        shifted = [[conv(m.rows[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    else:
        shifted = (m.to_numpy() - complex(lam) * np.eye(n)).tolist()
    ranks = [n]
    power = shifted
    for k in range(1, mult + 1):
        if k > 1:
            power = linalg.matmul(power, shifted) if exact else (np.array(power) @ np.array(shifted)).tolist()
        ranks.append(_rank(power, exact))
    return ranks


def jordan_structure(m: Matrix, lam, mult: int) -> tuple:
    """Block sizes at ``lam``; blocks of size >= k number ``r_(k-1) - r_k``."""
    ranks = rank_chain(m, lam, mult)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, mult + 1)]
    if any(x < 0 for x in at_least) or any(at_least[k] < at_least[k + 1] for k in range(mult - 1)):
        raise RankChainInconsistent(f"rank chain {ranks} is not a valid Jordan chain")
    if ranks[0] - ranks[mult] != mult:
        raise RankChainInconsistent(f"rank chain {ranks} does not account for multiplicity {mult}")
    sizes = []
    for k in range(mult, 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < mult else 0)
        sizes.extend([k] * exactly)
    return tuple(sizes)


def _is_positive_diagonalizable(a: Matrix, s: Spectrum):
    if not a.min_entry() > 0:
        return None
    try:
        return eigen_basis(a, s)
    except (NotDiagonalizable, IllConditioned):
        return None


def balance_columns(a: Matrix):
    """``A + e q^T`` with ``sum(q) = 0`` and every entry at least the mean column minimum.

    For ``A`` in CS_alpha this moves no eigenvalue and leaves the Jordan
    structure of the non-Perron part alone. Returns ``None`` when the column
    minima do not sum to a positive number.
    """
    if common_row_sum(a.rows, a.backend) is None:
        return None
    mins = [min(col) for col in zip(*a.rows)]
    total = sum(mins, a.backend.zero)
    if not total > 0:
        return None
    q = [total / a.n - c for c in mins]
    return brauer_update(a, ones_vector(a.n, a.backend), q, a.row_sum or common_row_sum(a.rows, a.backend))


def positive_diagonalizable_realization(s, trace=None):
    """Find a positive diagonalizable realization of ``s`` or raise.

    Each candidate is either a direct realization or one of the list with the
    Perron value lowered by ``delta`` plus ``delta/n`` added to every entry;
    that rank-one lift restores the spectrum and keeps the rest of the Jordan
    structure. A candidate that is not yet positive gets one zero-sum column
    balance.
    """
    from .realize import check_all, realize_with

    if not isinstance(s, Spectrum):
        s = normalize(s)
    b = s.backend
    attempts = []
    deltas = [b.zero] + [max(b.one, abs(b.scalar(s.perron.real))) / 2 ** k for k in range(1, 12)]
    for delta in deltas:
        base = s.shifted(-delta) if delta else s
        if delta and base.perron != s.perron - delta:
            continue
        names = [name for name, ok in check_all(base).items() if ok]
        if not names:
            attempts.append(f"delta={delta}: no implemented criterion applies")
        for name in names:
            try:
                mat = realize_with(base, name).matrix
            except NiepError as exc:
                attempts.append(f"delta={delta}, {name}: {exc}")
                continue
            if delta:
                lift = delta / s.n
                mat = Matrix.wrap([[x + lift for x in row] for row in mat.rows], mat.backend)
            balanced = not mat.min_entry() > 0
            if balanced:
                mat = balance_columns(mat) or mat
            d = _is_positive_diagonalizable(mat, s)
            if d is not None:
                if trace is not None:
                    trace.append({"step": "positive-base", "criterion": name, "delta": delta, "balanced": balanced})
                return mat, d
            attempts.append(f"delta={delta}, {name}: output not positive diagonalizable")
    raise PositiveRealizationNotFound(
        "no positive diagonalizable realization found (" + "; ".join(attempts[-3:]) + ")"
    )


@dataclass
class UniversalResult:
    target: JordanSpec
    matrix: Matrix
    rank_chains: dict  # eigenvalue -> ranks of (M - lam I)^k
    found: dict  # eigenvalue -> recovered partition
    matches: bool


def universal_realize(s, a: Matrix | None = None, eps=AUTO, trace=None) -> list:
    """One positive matrix per Jordan form allowed by ``s``, each with its rank evidence."""
    if not isinstance(s, Spectrum):
        s = normalize(s)
    if a is None:
        a, d = positive_diagonalizable_realization(s, trace)
    else:
        if not a.min_entry() > 0:
            raise InputError("the supplied realization must be entrywise positive")
        d = eigen_basis(a, s)
    out = []
    for target in enumerate_jordan_forms(s):
        m = minc_realize(a, d, target, eps)
        chains, found = {}, {}
        for lam, part in target.blocks:
            chains[lam] = rank_chain(m, lam, sum(part))
            found[lam] = jordan_structure(m, lam, sum(part))
        ok = all(found[lam] == part for lam, part in target.blocks)
        out.append(UniversalResult(target, m, chains, found, ok))
    return out
