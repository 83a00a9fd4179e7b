"""Scalar backends.

Two number systems are supported everywhere: exact rationals (``gmpy2.mpq``)
and IEEE doubles.  Complex values are ``complex`` in float mode and
:class:`QComplex` (a pair of rationals) in rational mode; both expose
``.real``, ``.imag`` and ``.conjugate()`` just like the builtin, which lets the
rest of the package stay backend agnostic.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz

__all__ = [
    "Backend",
    "RATIONAL",
    "FLOAT",
    "QComplex",
    "backend_of",
    "exact_sqrt",
    "is_real",
    "abs2",
    "to_python_complex",
]

_MPQ = type(mpq(0))
_MPZ = type(mpz(0))


class QComplex:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real, imag=0):
        self.real = real if type(real) is _MPQ else mpq(real)
        self.imag = imag if type(imag) is _MPQ else mpq(imag)

    @staticmethod
    def _parts(other):
        if isinstance(other, QComplex):
            return other.real, other.imag
        if isinstance(other, (int, _MPQ, _MPZ, Fraction)):
            return mpq(other), mpq(0)
        return None

    def conjugate(self):
        return QComplex(self.real, -self.imag)

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QComplex(self.real + p[0], self.imag + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QComplex(self.real - p[0], self.imag - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QComplex(p[0] - self.real, p[1] - self.imag)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.real, self.imag
        c, d = p
        return QComplex(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("QComplex division by zero")
        a, b = self.real, self.imag
        return QComplex((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QComplex(*p) / self

    def __neg__(self):
        return QComplex(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __abs__(self):
        return math.hypot(float(self.real), float(self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.real == p[0] and self.imag == p[1]

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"QComplex({self.real}, {self.imag})"

    def __str__(self):
        sign = "+" if self.imag >= 0 else "-"
        return f"({self.real}{sign}{abs(self.imag)}i)"


def exact_sqrt(q):
    """Square root of a nonnegative rational if it is rational, else ``None``."""
    q = mpq(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    if gmpy2.is_square(num) and gmpy2.is_square(den):
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return None


def is_real(z) -> bool:
    return not getattr(z, "imag", 0)


def abs2(z):
    """Squared modulus, exact for rationals and ``QComplex``."""
    return z.real * z.real + z.imag * z.imag


def to_python_complex(z) -> complex:
    return complex(float(z.real), float(z.imag))


@dataclass(frozen=True)
class Backend:
    """A number system plus the tolerances that go with it.

    ``tol`` is the closeness threshold for spectrum bookkeeping; it is zero in
    rational mode, where every comparison is exact.
    """

    name: str
    exact: bool
    tol: float

    @property
    def zero(self):
        return mpq(0) if self.exact else 0.0

    @property
    def one(self):
        return mpq(1) if self.exact else 1.0

    def scalar(self, x):
        """Coerce a real number (int, Fraction, mpq, float, decimal/"p/q" str)."""
        if self.exact:
            if type(x) is _MPQ:
                return x
            if isinstance(x, str):
                return mpq(x.strip())
            if isinstance(x, float):
                if not math.isfinite(x):
                    raise ValueError(f"non-finite value {x!r}")
                return mpq(repr(x))
            if isinstance(x, (bool,)):
                return mpq(int(x))
            if isinstance(x, numbers.Rational) or type(x) is _MPZ:
                return mpq(x)
            if isinstance(x, QComplex) or isinstance(x, complex):
                raise TypeError(f"expected a real value, got {x!r}")
            return mpq(x)
        if isinstance(x, str):
            return float(Fraction(x.strip()))
        if isinstance(x, (QComplex, complex)):
            raise TypeError(f"expected a real value, got {x!r}")
        v = float(x)
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {x!r}")
        return v

    def complex(self, re, im=0):
        """Build a complex scalar; real results collapse to a plain scalar."""
        re, im = self.scalar(re), self.scalar(im)
        if im == 0:
            return re
        return QComplex(re, im) if self.exact else complex(re, im)

    def value(self, z):
        """Coerce anything number-like, complex included."""
        if isinstance(z, (QComplex, complex)) or (
            isinstance(z, numbers.Complex) and not isinstance(z, numbers.Real)
        ):
            re, im = z.real, z.imag
            if isinstance(z, complex) and self.exact:
                re, im = repr(float(re)), repr(float(im))
            return self.complex(re, im)
        return self.scalar(z)

    def sqrt(self, x):
        """Square root; exact or ``None`` in rational mode."""
        if self.exact:
            return exact_sqrt(x)
        return math.sqrt(float(x))

    def close(self, a, b, scale=1.0) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.tol * max(1.0, abs(scale))


RATIONAL = Backend("rational", exact=True, tol=0.0)
FLOAT = Backend("float", exact=False, tol=1e-9)


def backend_named(name: str) -> Backend:
    try:
        return {"rational": RATIONAL, "float": FLOAT}[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r} (use 'rational' or 'float')") from None


def backend_of(values) -> Backend:
    """Float if any value is a float/complex (or numpy float), else rational."""
    for v in values:
        if isinstance(v, (float, complex)) or type(v).__module__ == "numpy":
            return FLOAT
        if type(v).__name__ == "mpfr":
            return FLOAT
    return RATIONAL
