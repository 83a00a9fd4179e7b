"""3x3 nonnegative matrices with prescribed eigenvalues and prescribed diagonal.

The solver fixes the zero pattern

    [[w1, 0,      l1 - w1    ],
     [p,  w2,     l1 - w2 - p],
     [l1 - w3 - q, q,  w3    ]]

Every row sums to ``l1``, so ``l1`` is an eigenvalue and the trace matches by
construction. What remains is the second elementary symmetric function, which
is *linear* in ``q`` once ``p`` is fixed. When this pattern has no
nonnegative solution, the remaining orderings of the diagonal are tried and
the result is permuted back.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import ConditionsNotSatisfied, InputError, NoNonnegativeRoot
from .matrix import Matrix
from .scalars import abs2, backend_of

__all__ = ["DiagonalSpec", "check_perfect_conditions", "construct_3x3"]


@dataclass(frozen=True)
class DiagonalSpec:
    omega: tuple
    lam: tuple
    backend: object = None

    @classmethod
    def of(cls, omega, lam, backend=None):
        omega, lam = list(omega), list(lam)
        if len(omega) != 3 or len(lam) != 3:
            raise InputError("need three diagonal entries and three eigenvalues")
        if backend is None:
            backend = backend_of([*omega, *lam])
        om = tuple(backend.scalar(w) for w in omega)
        ls = [backend.value(v) for v in lam]
        if getattr(ls[0], "imag", 0):
            raise InputError("lambda_1 must be real")
        rest = ls[1:]
        if any(getattr(v, "imag", 0) for v in rest):
            if rest[0].conjugate() != rest[1]:
                raise InputError("lambda_2, lambda_3 must be real or a conjugate pair")
            if rest[0].imag < 0:
                rest = [rest[1], rest[0]]
        else:
            rest.sort(reverse=True)
        lead = ls[0]
        if lead < 0 or any(abs2(v) > lead * lead for v in rest):
            raise InputError("lambda_1 must dominate the other moduli")
        return cls(om, (lead, *rest), backend)

    @property
    def e2(self):
        l1, l2, l3 = self.lam
        return (l1 * (l2 + l3) + l2 * l3).real

    @property
    def w2(self):
        w1, w2, w3 = self.omega
        return w1 * w2 + w1 * w3 + w2 * w3


def _spec(d, lam=None, backend=None):
    if isinstance(d, DiagonalSpec):
        return d
    return DiagonalSpec.of(d, lam, backend)


def check_perfect_conditions(d, lam=None, backend=None) -> bool:
    """The four diagonal/eigenvalue compatibility conditions for nonnegative CS 3x3."""
    d = _spec(d, lam, backend)
    b = d.backend
    l1 = d.lam[0]
    trace = (d.lam[0] + d.lam[1] + d.lam[2]).real
    in_range = all(0 <= w <= l1 for w in d.omega)
    same_trace = b.close(sum(d.omega, b.zero), trace, scale=l1)
    return in_range and same_trace and d.w2 >= d.e2 and max(d.omega) >= d.lam[1].real


def _solve_pattern(omega, l1, e2, b):
    w1, w2, w3 = omega
    a = l1 - w1
    t0 = l1 - w2
    s0 = l1 - w3
    dd = w1 * w2 + w1 * w3 + w2 * w3 - e2
    k = dd - a * s0
    zero = b.zero
    if k < 0:
        p, q = t0, -k / a
    elif k > 0:
        if t0 <= a:
            return None
        p, q = zero, k / (t0 - a)
    else:
        p, q = t0, zero
    r, s = t0 - p, s0 - q
    if not b.exact:
        # absorb rounding noise at the boundary of the feasible set
        slack = 1e-12 * max(1.0, abs(l1))
        p, q, r, s, a = (zero if -slack <= v < 0 else v for v in (p, q, r, s, a))
    if min(p, q, r, s, a) < 0:
        return None
    return [[w1, zero, a], [p, w2, r], [s, q, w3]]


def construct_3x3(d, lam=None, backend=None, trace=None) -> Matrix:
    """Nonnegative B in CS_{lambda_1} with diagonal omega and spectrum lambda."""
    d = _spec(d, lam, backend)
    if not check_perfect_conditions(d):
        raise ConditionsNotSatisfied(f"no nonnegative CS matrix has diagonal {d.omega} and spectrum {d.lam}")
    b = d.backend
    l1, e2 = d.lam[0], d.e2
    for perm in permutations(range(3)):
        rows = _solve_pattern([d.omega[i] for i in perm], l1, e2, b)
        if rows is None:
            continue
        out = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                out[perm[i]][perm[j]] = rows[i][j]
        if trace is not None:
            trace.append({"step": "diag3", "pattern": list(perm)})
        return Matrix.wrap(out, b, l1)
    raise NoNonnegativeRoot(f"pattern search failed for diagonal {d.omega} and spectrum {d.lam}")
