"""Finite-dimensional consequences of the spectral transfer.

For matrices the g-Drazin and Drazin spectra are empty, so equality of
those spectra is vacuous.  What survives at matrix scale:

* per-lambda invertibility transfer, lambda I - ac invertible iff
  lambda I - bd invertible (lambda != 0).  Scaling a and d by 1/lambda keeps
  every family equation balanced, which reduces this to the Jacobson-type
  lemma at lambda = 1;
* equality of the nonzero eigenvalue multisets of ac and bd.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cline import ClineQuadruple, _require
from .eigen import eigenvalues
from .errors import ZeroLambda
from .matrix import Matrix, is_invertible
from .scalar import DEFAULT_TOL, Tolerance, convert
from .serialize import complex_to_json

MATCH_TOL = 1e-6
SIGMA_D_NOTE = (
    "every square complex matrix is Drazin (hence g-Drazin) invertible, "
    "so the Drazin and g-Drazin spectra are empty in finite dimension"
)


@dataclass(frozen=True)
class SpectrumSet:
    values: tuple[complex, ...]
    match_tol: float = MATCH_TOL
    note: str = ""

    def nonzero(self) -> SpectrumSet:
        return SpectrumSet(tuple(v for v in self.values if abs(v) >= self.match_tol), self.match_tol)

    def matches(self, other: SpectrumSet) -> bool:
        return multiset_match(self.values, other.values, self.match_tol)


def multiset_match(xs, ys, tol: float = MATCH_TOL) -> bool:
    """Greedy matching: repeatedly pair the globally closest remaining values."""
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return False
    pairs = sorted((abs(x - y), i, j) for i, x in enumerate(xs) for j, y in enumerate(ys))
    used_x, used_y = set(), set()
    for dist, i, j in pairs:
        if i in used_x or j in used_y:
            continue
        if dist > tol:
            return False
        used_x.add(i)
        used_y.add(j)
    return len(used_x) == len(xs)


def spectrum(a: Matrix, tol: Tolerance = DEFAULT_TOL, match_tol: float = MATCH_TOL) -> SpectrumSet:
    return SpectrumSet(tuple(eigenvalues(a, tol)), match_tol)


def _invertible_shift(lam, m: Matrix, tol: Tolerance) -> bool:
    eye = Matrix.identity(m.n, m.backend)
    return is_invertible(eye.scale(lam) - m, tol)


def invertibility_sides(q: ClineQuadruple, lam, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, bool]:
    """(lambda I - ac invertible, lambda I - bd invertible)."""
    lam = convert(lam, q.backend)
    if not lam:
        raise ZeroLambda("lambda must be nonzero")
    return _invertible_shift(lam, q.a @ q.c, tol), _invertible_shift(lam, q.b @ q.d, tol)


def invertibility_transfer(q: ClineQuadruple, lam, tol: Tolerance = DEFAULT_TOL) -> bool:
    _require(q, tol)
    left, right = invertibility_sides(q, lam, tol)
    return left == right


def scaled(q: ClineQuadruple, lam) -> ClineQuadruple:
    """(a/lambda, b, c, d/lambda): ac and bd both scale by 1/lambda."""
    inv = 1 / convert(lam, q.backend)
    return ClineQuadruple(q.a.scale(inv), q.b, q.c, q.d.scale(inv), q.family)


def nonzero_spectrum_equal(
    q: ClineQuadruple, tol: Tolerance = DEFAULT_TOL, match_tol: float = MATCH_TOL
) -> bool:
    _require(q, tol)
    left = spectrum(q.a @ q.c, tol, match_tol).nonzero()
    right = spectrum(q.b @ q.d, tol, match_tol).nonzero()
    return left.matches(right)


def sigma_d_report(a: Matrix) -> SpectrumSet:
    """The g-Drazin spectrum of a matrix: always empty."""
    _ = a.n  # rejects non-square input
    return SpectrumSet((), MATCH_TOL, SIGMA_D_NOTE)


def lambda_samples(q: ClineQuadruple, count: int = 20, tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> list[complex]:
    """Deterministic nonzero sample points: eigenvalues of ac offset by 1e-3, then seeded draws."""
    rng = random.Random(seed)
    out: list[complex] = []
    for v in eigenvalues((q.a @ q.c).to_f64(), tol):
        if abs(v) >= MATCH_TOL:
            out.append(v + 1e-3)
            out.append(v - 1e-3j)
    out = out[: count // 2]
    while len(out) < count:
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(z) > 1e-3:
            out.append(z)
    return out


def spectral_report(q: ClineQuadruple, lambdas, tol: Tolerance = DEFAULT_TOL) -> dict:
    checks = [{"lambda": complex_to_json(complex(lam)), "transfer_holds": invertibility_transfer(q, lam, tol)} for lam in lambdas]
    return {"lambda_checks": checks, "nonzero_spectrum_equal": nonzero_spectrum_equal(q, tol)}
