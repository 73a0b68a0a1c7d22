"""Scalar backends: exact Gaussian rationals and complex doubles.

Exact scalars are :class:`GaussianRational` values (a pair of
:class:`fractions.Fraction`).  Float scalars are plain Python ``complex``.
Matrices never mix the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

EXACT = "exact"
F64 = "f64"
BACKENDS = (EXACT, F64)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """Exact element of Q(i), stored as ``re + im*i`` with Fraction parts.

    Fraction keeps both parts in lowest terms with a positive denominator.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value))
        raise TypeError(f"cannot convert {value!r} to GaussianRational")

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = GaussianRational.coerce(other)
        return _gr(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = GaussianRational.coerce(other)
        return _gr(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _gr(a * c, _ZERO)
        return _gr(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = GaussianRational.coerce(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.reciprocal()

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __pos__(self):
        return self

    def reciprocal(self) -> GaussianRational:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("GaussianRational division by zero")
            return _gr(1 / a, _ZERO)
        norm = a * a + b * b
        return _gr(a / norm, -b / norm)

    def conjugate(self) -> GaussianRational:
        return _gr(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _gr(re: Fraction, im: Fraction) -> GaussianRational:
    # bypass __init__ coercion on internal hot paths
    g = object.__new__(GaussianRational)
    g.re = re
    g.im = im
    return g


ZERO = _gr(_ZERO, _ZERO)
ONE = _gr(_ONE, _ZERO)
I_UNIT = _gr(_ZERO, _ONE)


def zero(backend: str):
    return ZERO if backend == EXACT else 0j


def one(backend: str):
    return ONE if backend == EXACT else 1 + 0j


def convert(value, backend: str):
    """Convert a number to the scalar type of ``backend``.

    Floats become exact by their binary expansion (``Fraction(float)``), so
    ``convert(0.1, EXACT)`` is the dyadic rational nearest 0.1, not 1/10.
    """
    if backend == EXACT:
        return GaussianRational.coerce(value)
    if backend == F64:
        return complex(value)
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class Tolerance:
    """Float-mode thresholds; exact mode ignores both."""

    eq_tol: float = 1e-10
    rank_tol: float = 1e-9

    def __post_init__(self):
        if self.eq_tol <= 0 or self.rank_tol <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()
