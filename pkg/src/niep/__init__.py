"""Constructive tools for the nonnegative inverse eigenvalue problem.

Exact rational arithmetic is the default; every construction can be checked
against the characteristic-polynomial oracle in :mod:`niep.verify`.
"""

from .errors import CriterionNotSatisfied, InputError, InternalConstructionError, NiepError
from .matrix import Matrix
from .realize import RealizationCertificate, check_all, first_certifying_criterion, realize_auto, realize_with
from .scalars import FLOAT, RATIONAL, QComplex
from .spectra import Spectrum, elementary_symmetric, negativity_upper_bound, normalize
from .verify import certify, char_poly, structural_checks, verify_spectrum

__all__ = [
    "CriterionNotSatisfied",
    "InputError",
    "InternalConstructionError",
    "NiepError",
    "Matrix",
    "RealizationCertificate",
    "check_all",
    "first_certifying_criterion",
    "realize_auto",
    "realize_with",
    "FLOAT",
    "RATIONAL",
    "QComplex",
    "Spectrum",
    "elementary_symmetric",
    "negativity_upper_bound",
    "normalize",
    "certify",
    "char_poly",
    "structural_checks",
    "verify_spectrum",
]
