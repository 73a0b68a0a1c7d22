"""Eigenvalues of small dense matrices (n <= 8).

Exact matrices: the characteristic polynomial is formed exactly
(Faddeev-LeVerrier over Q(i)), the zero root is split off exactly, Yun's
square-free decomposition separates multiplicities, and each square-free
factor is solved by companion-matrix roots (numpy) followed by Newton
polishing.  Repeated and zero eigenvalues therefore come out clean instead
of as the eps**(1/k) clusters a QR sweep produces on Jordan blocks.

Float matrices take the same route.  Every double is a dyadic rational, so
the conversion is lossless and the result is the spectrum of the float
matrix as given: a repeated eigenvalue that survived into the float entries
keeps its multiplicity, while one already split by rounding upstream comes
out split, as it would from LAPACK.  The multiplicity of zero is taken from
the float rank chain instead (n - rank(a^k) at the index k), and the
matching low-order coefficients are cleared, so rounding noise in a
nilpotent part does not surface as eps**(1/k)-sized eigenvalues.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionTooLarge, NoConvergence
from .drazin import rank_chain
from .matrix import Matrix
from .scalar import DEFAULT_TOL, EXACT, ONE, ZERO, GaussianRational, Tolerance

MAX_EIG_DIM = 8
NEWTON_STEPS = 50


# -- exact polynomials, coefficient lists low -> high ---------------------------


def charpoly(a: Matrix) -> list[GaussianRational]:
    """Coefficients c_0..c_n of det(x I - a), exact."""
    n = a.n
    if not a.exact:
        raise ValueError("charpoly is exact-only")
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ident = Matrix.identity(n)
    m = Matrix.zeros(n)
    for k in range(1, n + 1):
        m = a @ m + ident.scale(coeffs[n - k + 1])
        am = a @ m
        tr = sum((am.rows[i][i] for i in range(n)), ZERO)
        coeffs[n - k] = -tr / k
    return coeffs


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _monic(p: list) -> list:
    lead = p[-1]
    return [c / lead for c in p]


def poly_divmod(p: list, q: list) -> tuple[list, list]:
    p, q = _trim(p), _trim(q)
    if len(q) == 1 and not q[0]:
        raise ZeroDivisionError("polynomial division by zero")
    out = [ZERO] * max(len(p) - len(q) + 1, 1)
    rem = list(p)
    inv_lead = q[-1].reciprocal()
    while len(rem) >= len(q) and any(rem):
        shift = len(rem) - len(q)
        f = rem[-1] * inv_lead
        out[shift] = f
        for i, c in enumerate(q):
            rem[shift + i] = rem[shift + i] - f * c
        rem.pop()
        rem = _trim(rem) if rem else [ZERO]
    return _trim(out), _trim(rem) if rem else [ZERO]


def poly_gcd(p: list, q: list) -> list:
    p, q = _trim(p), _trim(q)
    while any(q):
        p, q = q, poly_divmod(p, q)[1]
    return _monic(p)


def derivative(p: list) -> list:
    return _trim([c * i for i, c in enumerate(p)][1:] or [ZERO])


def squarefree_factors(p: list) -> list[tuple[list, int]]:
    """Yun's algorithm: p = lead * prod f_i**i with each f_i square-free."""
    p = _monic(_trim(p))
    out = []
    if len(p) == 1:
        return out
    b = p
    c = poly_gcd(b, derivative(b))
    w = poly_divmod(b, c)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(w, c)
        z = poly_divmod(w, y)[0]
        if len(z) > 1:
            out.append((_monic(z), i))
        i += 1
        w = y
        c = poly_divmod(c, y)[0]
    return out


def _roots_squarefree(p: list) -> list[complex]:
    coeffs = [complex(c) for c in p]
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]
    try:
        guesses = np.roots(coeffs[::-1])
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    dp = np.polyder(coeffs[::-1])
    out = []
    for z in guesses:
        z = complex(z)
        for _ in range(NEWTON_STEPS):
            d = np.polyval(dp, z)
            if d == 0:
                break
            step = np.polyval(coeffs[::-1], z) / d
            z -= step
            if abs(step) <= 1e-16 * max(1.0, abs(z)):
                break
        out.append(complex(z))
    return out


def _exact_eigenvalues(a: Matrix, zero_mult: int | None = None) -> list[complex]:
    p = _trim(charpoly(a))
    if zero_mult is not None:
        p = [ZERO] * zero_mult + p[zero_mult:]
    zeros = 0
    while len(p) > 1 and not p[0]:
        p = p[1:]
        zeros += 1
    vals = [0j] * zeros
    for factor, mult in squarefree_factors(p):
        for z in _roots_squarefree(factor):
            vals.extend([z] * mult)
    return vals


def eigenvalues(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> list[complex]:
    """All n eigenvalues with multiplicity, as complex doubles."""
    n = a.n
    if n > MAX_EIG_DIM:
        raise DimensionTooLarge(f"eigenvalues limited to n <= {MAX_EIG_DIM}")
    if a.exact:
        vals = _exact_eigenvalues(a)
    else:
        vals = _exact_eigenvalues(a.to_backend(EXACT), n - rank_chain(a, tol)[-1])
    assert len(vals) == n
    return sorted(vals, key=lambda z: (round(z.real, 12), round(z.imag, 12)))
