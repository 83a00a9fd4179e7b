"""Criterion dispatch: check every implemented criterion or realize with the first that applies."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .criteria import (
    RegionTag,
    check_ciarlet,
    check_complex_region,
    check_kellogg,
    check_rado,
    check_salzmann,
    check_suleimanova,
    find_borobia_partition,
    guo_bound_realize,
    realize_borobia,
    realize_ciarlet,
    realize_complex_smigoc,
    realize_kellogg,
    realize_rado,
    realize_salzmann,
    realize_suleimanova,
)
from .criteria._common import as_spectrum
from .errors import CriterionNotSatisfied, InputError, NiepError
from .matrix import Matrix
from .perturb import shift_perron
from .spectra import Spectrum
from .verify import VerificationReport, certify

__all__ = [
    "Criterion",
    "CRITERIA",
    "RealizationCertificate",
    "criterion_names",
    "check_all",
    "first_certifying_criterion",
    "realize_with",
    "realize_auto",
]


@dataclass(frozen=True)
class Criterion:
    name: str
    theorem: str
    check: Callable
    realize: Callable


def _holds(pred, s) -> bool:
    try:
        return bool(pred(s))
    except NiepError:
        return False


def _borobia_check(s):
    find_borobia_partition(s)
    return True


def _guo_check(s: Spectrum) -> bool:
    tail = s.tail
    if not tail:
        return s.perron >= 0
    if all(getattr(v, "imag", 0) for v in tail):
        return False
    bound, _ = guo_bound_realize(tail, s.backend)
    return s.perron >= bound


def _guo_realize(s: Spectrum, trace=None) -> Matrix:
    if not s.tail:
        return Matrix.wrap([[s.perron]], s.backend, s.perron)
    bound, mat = guo_bound_realize(s.tail, s.backend, trace=trace)
    if s.perron < bound:
        raise CriterionNotSatisfied(f"lambda_1 = {s.perron} is below the bound {bound}")
    if s.perron > bound:
        if trace is not None:
            trace.append({"step": "shift-perron", "eps": s.perron - bound})
        mat = shift_perron(mat, s.perron - bound)
    return mat


CRITERIA = (
    Criterion("suleimanova", "Suleimanova (negative tail)", check_suleimanova, realize_suleimanova),
    Criterion("ciarlet", "Ciarlet (small moduli)", check_ciarlet, realize_ciarlet),
    Criterion("salzmann", "Salzmann (paired diagonal)", check_salzmann, realize_salzmann),
    Criterion("kellogg", "Kellogg", check_kellogg, realize_kellogg),
    Criterion("borobia", "Borobia (merged negatives)", _borobia_check, realize_borobia),
    Criterion("rado", "Rado three-element split", check_rado, realize_rado),
    Criterion(
        "complex-region",
        "Smigoc complex wedge |Im| <= sqrt(3)|Re|",
        lambda s: check_complex_region(s, RegionTag.SQRT3_WEDGE),
        lambda s, trace=None: realize_complex_smigoc(s, RegionTag.SQRT3_WEDGE, trace),
    ),
    Criterion(
        "complex-region-re",
        "Smigoc complex wedge |Im| <= |Re|",
        lambda s: check_complex_region(s, RegionTag.RE_DOMINANT),
        lambda s, trace=None: realize_complex_smigoc(s, RegionTag.RE_DOMINANT, trace),
    ),
    Criterion("guo", "Guo bound (n-1) max|lambda_j|", _guo_check, _guo_realize),
)

_BY_NAME = {c.name: c for c in CRITERIA}
_BY_NAME["rado-example"] = _BY_NAME["rado"]


def criterion_names() -> list:
    return list(_BY_NAME)


@dataclass
class RealizationCertificate:
    """A realizing matrix with the construction that produced it.

    ``shifted`` marks the Guo fallback: the matrix then realizes ``spectrum``,
    which is the requested list with a larger Perron element.
    """

    matrix: Matrix
    spectrum: Spectrum
    criterion: str
    theorem: str
    steps: list = field(default_factory=list)
    report: VerificationReport | None = None
    shifted: bool = False
    requested: Spectrum | None = None


def check_all(s) -> dict:
    """Verdict of every criterion, in dispatch order."""
    s = as_spectrum(s)
    return {c.name: _holds(c.check, s) for c in CRITERIA}


def first_certifying_criterion(s):
    """Name of the first criterion whose check accepts ``s``, else ``None``."""
    s = as_spectrum(s)
    for c in CRITERIA:
        if _holds(c.check, s):
            return c.name
    return None


def _finish(mat, s, crit: Criterion, trace, shifted=False, requested=None):
    report = certify(mat, s)
    return RealizationCertificate(mat, s, crit.name, crit.theorem, trace, report, shifted, requested)


def realize_with(s, name: str) -> RealizationCertificate:
    """Realize with the named criterion; raises CriterionNotSatisfied when it does not apply."""
    try:
        crit = _BY_NAME[name]
    except KeyError:
        raise InputError(f"unknown criterion {name!r}; choose from {', '.join(_BY_NAME)}") from None
    s = as_spectrum(s)
    trace = []
    if not _holds(crit.check, s):
        raise CriterionNotSatisfied(f"{crit.name} does not apply to this list")
    mat = crit.realize(s, trace=trace)
    return _finish(mat, s, crit, trace)


def realize_auto(s, allow_shift: bool = True) -> RealizationCertificate:
    """Realize with the first applicable criterion.

    When nothing applies and ``allow_shift`` is set, the Guo construction
    realizes the list with its Perron element raised to the bound; the
    certificate says so through ``shifted``.
    """
    s = as_spectrum(s)
    for crit in CRITERIA:
        if _holds(crit.check, s):
            trace = []
            return _finish(crit.realize(s, trace=trace), s, crit, trace)
    if not allow_shift or not s.tail or all(getattr(v, "imag", 0) for v in s.tail):
        raise CriterionNotSatisfied("no implemented criterion applies")
    trace = []
    bound, mat = guo_bound_realize(s.tail, s.backend, trace=trace)
    raised = Spectrum((bound, *s.tail), mat.backend) if mat.backend == s.backend else as_spectrum(
        [bound, *s.tail], mat.backend
    )
    trace.append({"step": "perron-shift", "detail": f"lambda_1 raised from {s.perron} to {bound}"})
    return _finish(mat, raised, _BY_NAME["guo"], trace, shifted=True, requested=s)
