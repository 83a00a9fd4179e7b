"""Spectra: normalisation, elementary symmetric functions and the negativity bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BoundNotFound, InputError, NoPerronCandidate, NotConjugateClosed
from .scalars import RATIONAL, Backend, abs2, backend_of, exact_sqrt

__all__ = [
    "Spectrum",
    "SymmetricFunctions",
    "Negativity",
    "normalize",
    "elementary_symmetric",
    "negativity_upper_bound",
    "certified_by",
]


@dataclass(frozen=True)
class Spectrum:
    """A conjugate-closed list with its Perron element first.

    Real lists are sorted in decreasing order. Complex lists keep the Perron
    element first, then the real elements in decreasing order, then each
    conjugate pair as (positive imaginary part, its conjugate).
    """

    values: tuple
    backend: Backend = RATIONAL
    perron_index: int = 0

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def perron(self):
        return self.values[self.perron_index]

    @property
    def tail(self) -> tuple:
        return self.values[:self.perron_index] + self.values[self.perron_index + 1:]

    @property
    def is_real(self) -> bool:
        return all(not getattr(v, "imag", 0) for v in self.values)

    @property
    def p_index(self):
        """1-based index of the last nonnegative element of a real list."""
        if not self.is_real:
            return None
        return sum(1 for v in self.values if v >= 0)

    @property
    def tail_max_squared(self):
        return max((abs2(v) for v in self.tail), default=self.backend.zero)

    @property
    def tail_max(self):
        """Largest tail modulus; exact when it is rational."""
        sq = self.tail_max_squared
        if self.backend.exact:
            root = exact_sqrt(sq)
            return root if root is not None else math.sqrt(float(sq))
        return math.sqrt(sq)

    @property
    def total(self):
        return sum((v.real for v in self.values), self.backend.zero)

    def reals(self):
        return [v for v in self.values if not getattr(v, "imag", 0)]

    def shifted(self, delta) -> "Spectrum":
        """Same list with the Perron element raised by ``delta``."""
        vals = list(self.values)
        vals[self.perron_index] = vals[self.perron_index] + self.backend.scalar(delta)
        return normalize(vals, self.backend, require_perron=False)

    def with_backend(self, backend: Backend) -> "Spectrum":
        return normalize([backend.value(v) for v in self.values], backend, require_perron=False)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class SymmetricFunctions:
    e: tuple

    def char_poly(self):
        """Monic coefficients of prod(x - lambda): c_k = (-1)**k e_k."""
        return [c if k % 2 == 0 else -c for k, c in enumerate(self.e)]


@dataclass(frozen=True)
class Negativity:
    value: object
    witness: str


def _closeness(backend: Backend, tol):
    if backend.exact:
        return lambda a, b: a == b
    tol = backend.tol if tol is None else tol
    return lambda a, b: abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a)))


def normalize(raw, backend: Backend | None = None, tol: float | None = None, require_perron: bool = True) -> Spectrum:
    """Validate conjugate closure, pick the Perron element and order the list.

    With ``require_perron=False`` the largest real element leads even if it
    does not dominate every modulus; criteria use this so that they can
    report their own verdict instead of failing on input.
    """
    raw = list(raw)
    if not raw:
        raise InputError("spectrum must be nonempty")
    if backend is None:
        backend = backend_of(raw)
    vals = [backend.value(v) for v in raw]
    eps = 0.0 if backend.exact else (backend.tol if tol is None else tol)
    if not backend.exact:
        vals = [v.real if abs(v.imag) <= eps * max(1.0, abs(v)) else v for v in vals]

    close = _closeness(backend, tol)
    reals, uppers, lowers = [], [], []
    for v in vals:
        if not getattr(v, "imag", 0):
            reals.append(v)
        elif v.imag > 0:
            uppers.append(v)
        else:
            lowers.append(v)
    pairs = []
    unused = list(lowers)
    for u in uppers:
        match = next((k for k, w in enumerate(unused) if close(w, u.conjugate())), None)
        if match is None:
            raise NotConjugateClosed(f"{u} has no conjugate partner in the list")
        unused.pop(match)
        pairs.append(u)
    if unused:
        raise NotConjugateClosed(f"{unused[0]} has no conjugate partner in the list")

    if not reals:
        raise NoPerronCandidate("no real element in the list")
    reals.sort(key=lambda v: -v)  # stable: ties keep input order
    lead = reals[0]
    slack = 0.0 if backend.exact else eps * max(1.0, abs(lead))
    lead_sq = lead * lead
    for v in vals if require_perron else ():
        if backend.exact:
            ok = lead >= 0 and abs2(v) <= lead_sq
        else:
            ok = abs(v) <= lead + slack
        if not ok:
            raise NoPerronCandidate(f"{lead} does not dominate |{v}|")
    ordered = list(reals)
    for u in pairs:
        ordered.extend([u, u.conjugate()])
    return Spectrum(tuple(ordered), backend, 0)


def elementary_symmetric(s) -> SymmetricFunctions:
    """e_0..e_n of the list, inserting one value at a time."""
    if not isinstance(s, Spectrum):
        s = normalize(s)
    zero = s.backend.zero
    e = [s.backend.one] + [zero] * s.n
    for k, v in enumerate(s.values, start=1):
        for j in range(k, 0, -1):
            e[j] = e[j] + v * e[j - 1]
    return SymmetricFunctions(tuple(x.real for x in e))


# --- Brauer negativity upper bound ------------------------------------------


def certified_by(s: Spectrum):
    """Name of the first implemented criterion that certifies ``s``, or ``None``."""
    from .realize import first_certifying_criterion

    return first_certifying_criterion(s)


def negativity_upper_bound(s, step=None, certify=certified_by) -> Negativity:
    """Least grid shift of the Perron element that some criterion certifies.

    The answer is an upper bound on the Brauer negativity, not its value.
    Search is exponential bracketing followed by bisection, which is sound
    because the certified set is closed under increasing the Perron element.
    """
    if not isinstance(s, Spectrum):
        s = normalize(s, require_perron=False)
    b = s.backend
    lead = s.perron
    if step is None:
        step = b.scalar(max(1, abs(lead))) / 1024 if b.exact else max(1.0, abs(lead)) / 1024.0
    else:
        step = b.scalar(step)
    if step <= 0:
        raise InputError("grid step must be positive")

    # Past (n-1)m the Guo bound constructor always certifies the list.
    limit = (s.n - 1) * s.tail_max
    cap_steps = max(0, math.ceil((float(limit) - float(lead)) / float(step))) + 1

    def witness(k):
        return certify(s.shifted(k * step)) if k else certify(s)

    hit = witness(0)
    if hit:
        return Negativity(b.zero, hit)
    lo, hi, k = 0, None, 1
    while hi is None:
        if k > cap_steps:
            k = cap_steps
            if not witness(k):
                raise BoundNotFound(f"no certificate up to shift {float(k * step)}")
            hi = k
            break
        if witness(k):
            hi = k
        else:
            lo = k
            k *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if witness(mid):
            hi = mid
        else:
            lo = mid
    return Negativity(hi * step, witness(hi))
