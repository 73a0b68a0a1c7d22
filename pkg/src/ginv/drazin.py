"""Drazin index, Drazin inverse, group inverse, and the axiom-level verifier.

The Drazin inverse is computed by Cline's rank-factorization recursion:
factor a = B1 C1 with full rank, set a1 = C1 B1, factor again, and stop at
the first a_k that is invertible or zero.  Then

    a^D = B1 ... Bk (a_k)^-(k+1) Ck ... C1      (a^D = 0 if a_k = 0).

Everything before the final inverse is division-free apart from the RREF
that produces each factorization, so exact mode stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NoGroupInverse, Singular
from .matrix import COMMUTANT_MAX_DIM, Matrix, commutant_basis, full_rank_factorization, inverse, rank
from .scalar import DEFAULT_TOL, Tolerance

EPS = float(np.finfo(float).eps)
NOISE_FACTOR = 10.0


@dataclass(frozen=True)
class ConditionResult:
    name: str
    residual: float
    holds: bool
    skipped: bool = False

    def to_json(self) -> dict:
        d = {"name": self.name, "residual": self.residual, "holds": self.holds}
        if self.skipped:
            d["skipped"] = True
        return d


@dataclass(frozen=True)
class HypothesisReport:
    """Per-equation results; ``overall`` is the conjunction of non-skipped entries."""

    conditions: tuple[ConditionResult, ...]
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def overall(self) -> bool:
        return all(c.holds for c in self.conditions if not c.skipped)

    def __bool__(self):
        return self.overall

    def __getitem__(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {"overall": self.overall, "conditions": [c.to_json() for c in self.conditions]}
        out.update(self.extra)
        return out


def compare(name: str, lhs: Matrix, rhs: Matrix, tol: Tolerance = DEFAULT_TOL) -> ConditionResult:
    if lhs.exact and lhs.rows == rhs.rows:
        return ConditionResult(name, 0.0, True)
    res = lhs.residual(rhs)
    return ConditionResult(name, res, False if lhs.exact else res <= tol.eq_tol)


@dataclass(frozen=True)
class DrazinResult:
    inverse: Matrix
    index: int
    projector: Matrix
    core: Matrix
    nilpotent: Matrix

    @classmethod
    def build(cls, a: Matrix, ad: Matrix, index: int) -> DrazinResult:
        proj = a @ ad
        core = a @ proj
        return cls(inverse=ad, index=index, projector=proj, core=core, nilpotent=a - core)

    def to_json(self) -> dict:
        from .serialize import matrix_to_json

        return {"inverse": matrix_to_json(self.inverse), "index": self.index}


@dataclass(frozen=True)
class GroupResult:
    inverse: Matrix


def rank_chain(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """rank(a^0), rank(a^1), ... up to and including the first repeat.

    In float mode an entry of the computed a^j also counts as zero below the
    rounding bound j n u max(|a|^j) (|a| taken entrywise), so noise left in a
    power that is exactly zero is not mistaken for rank.
    """
    n = a.n
    chain = [n]
    power = Matrix.identity(n, a.backend)
    abs_a = None if a.exact else np.abs(np.array(a.rows, dtype=complex))
    abs_power = None if a.exact else np.eye(n)
    while True:
        power = power @ a
        floor = 0.0
        if abs_power is not None:
            abs_power = abs_power @ abs_a
            j = len(chain)
            floor = NOISE_FACTOR * j * n * EPS * float(abs_power.max()) / tol.rank_tol
        r = rank(power, tol, floor)
        chain.append(r)
        if r == chain[-2]:
            return chain
        if len(chain) > n + 2:
            raise NoConvergence("rank chain did not stabilize")


def index(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest k >= 0 with rank(a^k) == rank(a^(k+1)).

    The zero matrix (n >= 1) has index 1: rank(I) = n > rank(0) = rank(0^2).
    """
    return len(rank_chain(a, tol)) - 2


def drazin(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> DrazinResult:
    """Drazin inverse by the rank-factorization recursion.

    rank(a_i) = rank(a^(i+1)), so the ranks of every a_i are read off the
    rank chain of ``a``; the recursion stops after exactly index(a) steps.
    """
    n = a.n
    chain = rank_chain(a, tol)
    k_index = len(chain) - 2
    if k_index == 0:
        return DrazinResult.build(a, inverse(a, tol), 0)
    if chain[-1] == 0:
        return DrazinResult.build(a, Matrix.zeros(n, backend=a.backend), k_index)

    lefts: list[Matrix] = []
    rights: list[Matrix] = []
    cur = a
    for i in range(1, k_index + 1):
        b, c = full_rank_factorization(cur, tol, rank=chain[i])
        lefts.append(b)
        rights.append(c)
        cur = c @ b
    try:
        out = inverse(cur, tol) ** (k_index + 1)
    except Singular as exc:
        raise NoConvergence("core block judged singular; rank decisions are inconsistent") from exc
    for bi, ci in zip(reversed(lefts), reversed(rights)):
        out = bi @ out @ ci
    return DrazinResult.build(a, out, k_index)


def group(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> GroupResult:
    res = drazin(a, tol)
    if res.index > 1:
        raise NoGroupInverse(f"index {res.index} >= 2")
    return GroupResult(res.inverse)


def is_nilpotent(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return (a ** a.n).is_zero(tol)


def verify_drazin_axioms(
    a: Matrix,
    x: Matrix,
    k: int,
    tol: Tolerance = DEFAULT_TOL,
    comm2_max_dim: int = COMMUTANT_MAX_DIM,
) -> HypothesisReport:
    """Check xax = x, ax = xa, a^(k+1) x = a^k and, exactly for small n, x in comm^2(a)."""
    if a.shape != x.shape or a.backend != x.backend:
        raise DimensionMismatch("a and x must share shape and backend")
    ak = a ** k
    checks = [
        compare("xax = x", x @ a @ x, x, tol),
        compare("ax = xa", a @ x, x @ a, tol),
        compare(f"a^{k + 1} x = a^{k}", ak @ a @ x, ak, tol),
    ]
    if a.exact and a.n <= comm2_max_dim:
        worst = 0.0
        for m in commutant_basis(a, comm2_max_dim):
            res = (x @ m).residual(m @ x)
            worst = max(worst, res)
        checks.append(ConditionResult("x in comm2(a)", worst, worst == 0.0))
    else:
        checks.append(ConditionResult("x in comm2(a)", 0.0, False, skipped=True))
    return HypothesisReport(tuple(checks))
