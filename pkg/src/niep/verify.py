"""Independent oracle: characteristic polynomials and structural predicates.

Every constructor in the package is checked against :func:`char_poly`, which
never looks at how a matrix was built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq, mpz

from .matrix import Matrix
from .scalars import FLOAT, Backend

__all__ = [
    "VerificationReport",
    "char_poly",
    "poly_from_roots",
    "coefficient_deviation",
    "verify_spectrum",
    "structural_checks",
]


def _lcm_denominator(rows):
    d = mpz(1)
    for r in rows:
        for x in r:
            den = x.denominator
            if den != 1:
                d = d * den // math.gcd(d, den)
    return d


def _char_poly_exact(rows):
    n = len(rows)
    d = _lcm_denominator(rows)
    ints = np.empty((n, n), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            ints[i, j] = int(x * d)
    coeffs = [mpz(1)]
    work = np.zeros((n, n), dtype=object)
    work[...] = 0
    for k in range(1, n + 1):
        for i in range(n):
            work[i, i] += int(coeffs[-1])
        work = ints.dot(work)
        tr = sum(int(work[i, i]) for i in range(n))
        coeffs.append(mpz(-tr) // k)
    # det(xI - M) coefficients: c_k(M) = c_k(N) / d**k with N = d*M
    out = []
    dk = mpz(1)
    for c in coeffs:
        out.append(mpq(c, dk))
        dk *= d
    return out


def _char_poly_float(rows):
    a = np.array(rows, dtype=float)
    n = a.shape[0]
    coeffs = [1.0]
    work = np.zeros_like(a)
    for k in range(1, n + 1):
        work = a @ (work + coeffs[-1] * np.eye(n))
        coeffs.append(-float(np.trace(work)) / k)
    return coeffs


def char_poly(m) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(xI - M)``.

    Faddeev-LeVerrier recurrence. In rational mode the matrix is scaled to an
    integer matrix first so every division is exact.
    """
    if not isinstance(m, Matrix):
        m = Matrix.from_rows(m)
    if m.n == 0:
        return [m.backend.one]
    if m.backend.exact:
        return _char_poly_exact(m.rows)
    return _char_poly_float(m.rows)


def poly_from_roots(roots, backend: Backend) -> list:
    """Monic coefficients of prod(x - r); imaginary residue is dropped."""
    coeffs = [backend.one]
    for r in roots:
        nxt = coeffs + [backend.zero * r]
        for i in range(1, len(nxt)):
            nxt[i] = nxt[i] - r * coeffs[i - 1]
        coeffs = nxt
    return [c.real if backend.exact or not isinstance(c, float) else c for c in coeffs]


def coefficient_deviation(got, want, scale=1.0):
    """Largest |got_k - want_k| normalised by max(1, |want_k|, scale**k)."""
    worst = 0.0
    for k, (g, w) in enumerate(zip(got, want)):
        diff = g - w
        if diff == 0:
            continue
        denom = max(1.0, abs(float(w)), float(scale) ** k)
        worst = max(worst, abs(float(diff)) / denom)
    return worst


@dataclass
class VerificationReport:
    char_poly_match: bool | None = None
    max_deviation: float = 0.0
    deviation_index: int | None = None
    nonnegative: bool | None = None
    min_entry: object = None
    positive: bool | None = None
    row_sum: object = None
    row_sum_deviation: float | None = None
    row_sum_ok: bool | None = None
    symmetric: bool | None = None
    jordan: dict = field(default_factory=dict)
    jordan_ok: bool | None = None

    @property
    def passed(self) -> bool:
        flags = [
            self.char_poly_match,
            self.nonnegative,
            self.positive,
            self.row_sum_ok,
            self.symmetric,
            self.jordan_ok,
        ]
        return all(f for f in flags if f is not None)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        out = VerificationReport(**self.__dict__)
        for k, v in other.__dict__.items():
            if v is not None and v != {} and not (k == "max_deviation" and v == 0.0):
                setattr(out, k, v)
        return out


def verify_spectrum(m: Matrix, spectrum, tol: float | None = None) -> VerificationReport:
    """Compare ``char_poly(m)`` with the polynomial whose roots are ``spectrum``.

    ``spectrum`` may be a :class:`~niep.spectra.Spectrum` or a plain list.
    """
    values = list(getattr(spectrum, "values", spectrum))
    if len(values) != m.n:
        raise ValueError(f"matrix order {m.n} differs from spectrum length {len(values)}")
    backend = m.backend
    values = [backend.value(v) for v in values]
    got = char_poly(m)
    want = poly_from_roots(values, backend)
    report = VerificationReport()
    if backend.exact:
        bad = [k for k, (g, w) in enumerate(zip(got, want)) if g != w]
        report.char_poly_match = not bad
        report.deviation_index = bad[0] if bad else None
        report.max_deviation = 0.0 if not bad else max(abs(float(got[k] - want[k])) for k in bad)
        return report
    tol = FLOAT.tol if tol is None else tol
    scale = max((abs(complex(v)) for v in values), default=1.0)
    devs = [
        abs(float(g) - float(w)) / max(1.0, abs(float(w)), scale**k)
        for k, (g, w) in enumerate(zip(got, want))
    ]
    worst = max(range(len(devs)), key=devs.__getitem__)
    report.max_deviation = devs[worst]
    report.char_poly_match = devs[worst] <= tol
    report.deviation_index = None if report.char_poly_match else worst
    return report


def structural_checks(m: Matrix, want=("nonnegative",), row_sum=None, tol: float | None = None):
    """Evaluate the requested predicates among nonnegative, positive, row_sum, symmetric."""
    want = set(want)
    report = VerificationReport()
    exact = m.backend.exact
    tol = (0.0 if exact else FLOAT.tol) if tol is None else tol
    if m.n:
        lo = m.min_entry()
    else:
        lo = m.backend.zero
    scale = max(1.0, max((abs(float(x)) for r in m.rows for x in r), default=0.0))
    if "nonnegative" in want:
        report.min_entry = lo
        report.nonnegative = lo >= 0 if exact else lo >= -tol * scale
    if "positive" in want:
        report.min_entry = lo
        report.positive = lo > 0
    if "row_sum" in want:
        sums = m.computed_row_sums()
        alpha = row_sum if row_sum is not None else (m.row_sum if m.row_sum is not None else (sums[0] if sums else 0))
        dev = max((abs(float(s - alpha)) for s in sums), default=0.0)
        report.row_sum = alpha
        report.row_sum_deviation = dev
        report.row_sum_ok = dev == 0 if exact else dev <= tol * max(1.0, abs(float(alpha)))
    if "symmetric" in want:
        n = m.n
        if exact:
            report.symmetric = all(m.rows[i][j] == m.rows[j][i] for i in range(n) for j in range(i))
        else:
            report.symmetric = all(
                abs(m.rows[i][j] - m.rows[j][i]) <= tol * scale for i in range(n) for j in range(i)
            )
    return report


def certify(m: Matrix, spectrum, want=("nonnegative",), tol=None) -> VerificationReport:
    """Spectrum and structural checks in one report."""
    return verify_spectrum(m, spectrum, tol).merge(structural_checks(m, want, tol=tol))
