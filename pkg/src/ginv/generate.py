"""Seeded generators of exact quadruples for every hypothesis family.

All randomness flows from ``random.Random(spec.seed)``; identical specs give
identical quadruples.  Every emitted quadruple has passed
:func:`ginv.cline.check_conditions` for its family.  Generators never fall
back to a trivial instance: when a strategy runs out of attempts they raise
:class:`GenerationFailed`.

Useful structural facts:

* every family is stable under simultaneous similarity x -> T x T^-1, so
  templates are conjugated by random unimodular T to hide their structure;
* families are stable under direct sums;
* weighted superdiagonal shifts make every product of >= n shifts vanish,
  so the degree-4 equations hold automatically for n <= 4.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .cline import ClineQuadruple, Family, check_conditions, check_family
from .errors import GenerationFailed, Singular
from .matrix import Matrix, block_diag, inverse, nullspace
from .scalar import EXACT, ZERO, GaussianRational

DEFAULT_POOL = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))
MATRIX_STYLES = ("dense", "sparse", "lowrank", "nilpotent", "upper")


@dataclass(frozen=True)
class GenSpec:
    family: Family
    dim: int
    seed: int
    entry_pool: tuple = DEFAULT_POOL
    max_attempts: int = 10000

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.entry_pool:
            raise ValueError("entry_pool must be nonempty")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")


@dataclass(frozen=True)
class Generated:
    quad: ClineQuadruple
    strategy: str
    attempts: int
    families: dict = field(default_factory=dict)

    @property
    def ring_four(self) -> bool:
        return self.families.get(Family.RING_FOUR.value, False)


# -- random matrices ------------------------------------------------------------


def _pick(rng: random.Random, pool) -> GaussianRational:
    return GaussianRational(rng.choice(pool))


def _nonzero_pool(pool) -> tuple:
    nz = tuple(x for x in pool if x)
    if not nz:
        raise GenerationFailed("entry pool has no nonzero value")
    return nz


def random_matrix(rng: random.Random, n: int, pool=DEFAULT_POOL, style: str | None = None) -> Matrix:
    """Random exact matrix; ``style`` biases toward singular structure."""
    style = style or rng.choice(MATRIX_STYLES)
    z = ZERO
    if style == "dense":
        rows = [[_pick(rng, pool) for _ in range(n)] for _ in range(n)]
    elif style == "sparse":
        rows = [[_pick(rng, pool) if rng.random() < 0.35 else z for _ in range(n)] for _ in range(n)]
    elif style == "lowrank":
        r = rng.randrange(n) if n > 1 else 0
        if r == 0:
            return Matrix.zeros(n)
        left = Matrix(tuple(tuple(_pick(rng, pool) for _ in range(r)) for _ in range(n)))
        right = Matrix(tuple(tuple(_pick(rng, pool) for _ in range(n)) for _ in range(r)))
        return left @ right
    elif style == "nilpotent":
        rows = [[_pick(rng, pool) if j > i else z for j in range(n)] for i in range(n)]
    elif style == "upper":
        rows = [[_pick(rng, pool) if j >= i else z for j in range(n)] for i in range(n)]
    else:
        raise ValueError(f"unknown style {style!r}")
    return Matrix(tuple(tuple(r) for r in rows))


def random_unimodular(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    """(T, T^-1) with T = L U, unit triangular factors with entries in {-1, 0, 1}."""
    z, o = ZERO, GaussianRational(1)
    choices = (-1, 0, 0, 1)
    lower = Matrix(
        tuple(tuple(o if i == j else (GaussianRational(rng.choice(choices)) if j < i else z) for j in range(n)) for i in range(n))
    )
    upper = Matrix(
        tuple(tuple(o if i == j else (GaussianRational(rng.choice(choices)) if j > i else z) for j in range(n)) for i in range(n))
    )
    t = lower @ upper
    return t, inverse(t)


def random_invertible(rng: random.Random, n: int, pool=DEFAULT_POOL, attempts: int = 1000) -> Matrix:
    for _ in range(attempts):
        m = random_matrix(rng, n, pool, "dense")
        try:
            inverse(m)
            return m
        except Singular:
            continue
    raise GenerationFailed("could not draw an invertible matrix from the pool")


def conjugate(q: ClineQuadruple, t: Matrix, t_inv: Matrix) -> ClineQuadruple:
    return ClineQuadruple(t @ q.a @ t_inv, t @ q.b @ t_inv, t @ q.c @ t_inv, t @ q.d @ t_inv, q.family)


def _maybe_conjugate(rng: random.Random, q: ClineQuadruple) -> ClineQuadruple:
    if q.n > 1 and rng.random() < 0.5:
        return conjugate(q, *random_unimodular(rng, q.n))
    return q


def shift(rng: random.Random, n: int, pool) -> Matrix:
    return Matrix.shift(n, [rng.choice(pool) for _ in range(n - 1)])


def sandwich_kernel(a: Matrix) -> list[Matrix]:
    """Basis of {N : a N a = 0}, computed exactly from the n^2 x n^2 system."""
    n = a.n
    rows = []
    for p in range(n):
        for q in range(n):
            rows.append(tuple(a.rows[p][k] * a.rows[l][q] for k in range(n) for l in range(n)))
    vecs = nullspace(Matrix(tuple(rows), EXACT))
    return [Matrix(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))) for v in vecs]


def _sandwich_perturbation(rng: random.Random, a: Matrix, pool) -> Matrix:
    basis = sandwich_kernel(a)
    out = Matrix.zeros(a.n)
    for m in basis:
        if rng.random() < 0.5:
            out = out + m.scale(rng.choice(pool))
    return out


def _singular_biased(rng: random.Random, n: int, pool) -> Matrix:
    return random_matrix(rng, n, pool, rng.choice(("sparse", "lowrank", "nilpotent", "lowrank", "dense")))


# -- templates (each returns a candidate; the driver verifies) --------------------


def _t_classical(rng, spec) -> ClineQuadruple:
    a = random_matrix(rng, spec.dim, spec.entry_pool)
    b = random_matrix(rng, spec.dim, spec.entry_pool)
    return ClineQuadruple(a, b, b, a, Family.CLASSICAL)


def _t_lian_zeng(rng, spec) -> ClineQuadruple:
    a = _singular_biased(rng, spec.dim, spec.entry_pool)
    b = random_matrix(rng, spec.dim, spec.entry_pool)
    c = b + _sandwich_perturbation(rng, a, spec.entry_pool)
    return ClineQuadruple(a, b, c, a, Family.LIAN_ZENG)


def _t_equal(rng, spec) -> ClineQuadruple:
    a = random_matrix(rng, spec.dim, spec.entry_pool)
    return ClineQuadruple(a, a, a, a, spec.family)


def _t_shifts(rng, spec) -> ClineQuadruple:
    n, pool = spec.dim, spec.entry_pool
    if n == 1:
        z = Matrix.zeros(1)
        return ClineQuadruple(z, z, z, z, spec.family)
    return ClineQuadruple(shift(rng, n, pool), shift(rng, n, pool), shift(rng, n, pool), shift(rng, n, pool), spec.family)


def _t_equal_products(rng, spec) -> ClineQuadruple:
    # ac = db makes all four equations identities
    n, pool = spec.dim, spec.entry_pool
    a = random_matrix(rng, n, pool)
    c = _singular_biased(rng, n, pool)
    d, d_inv = random_unimodular(rng, n)
    return ClineQuadruple(a, d_inv @ a @ c, c, d, spec.family)


def _t_lz_as(rng, spec) -> ClineQuadruple:
    q = _t_lian_zeng(rng, spec)
    return q.with_family(spec.family)


def _t_classical_as(rng, spec) -> ClineQuadruple:
    return _t_classical(rng, spec).with_family(spec.family)


def _t_sparse(rng, spec) -> ClineQuadruple:
    # about one nonzero per row keeps the exact hit rate usable up to n = 6
    n, pool = spec.dim, spec.entry_pool
    density = min(0.5, 1.0 / n)
    nz = _nonzero_pool(pool)

    def draw():
        return Matrix(tuple(tuple(_pick(rng, nz) if rng.random() < density else ZERO for _ in range(n)) for _ in range(n)))

    return ClineQuadruple(draw(), draw(), draw(), draw(), spec.family)


def _t_idempotent_defect(rng, spec) -> ClineQuadruple:
    """X = ac, Y = db with D = X - Y, D^2 = 0, DX = 0; typically XD != 0.

    Then X^2 = YX and Y^2 = XY, while b(ac)a - b(db)a = d^-1 (XD) a is
    usually nonzero: the two product equations hold without the other two.
    """
    n, pool = spec.dim, spec.entry_pool
    if n < 2:
        return _t_shifts(rng, spec)
    p = rng.randrange(1, n)
    z = ZERO
    x_rows = [[_pick(rng, pool) if i < p else z for _ in range(n)] for i in range(n)]
    d_rows = [[_pick(rng, pool) if (i < p and j >= p) else z for j in range(n)] for i in range(n)]
    x = Matrix(tuple(tuple(r) for r in x_rows))
    dm = Matrix(tuple(tuple(r) for r in d_rows))
    y = x - dm
    t, t_inv = random_unimodular(rng, n)
    x, y = t @ x @ t_inv, t @ y @ t_inv
    a, a_inv = random_unimodular(rng, n)
    d, d_inv = random_unimodular(rng, n)
    return ClineQuadruple(a, d_inv @ y, a_inv @ x, d, spec.family)


def _direct_sum(rng, spec, template) -> ClineQuadruple:
    if spec.dim < 2:
        return template(rng, spec)
    k = rng.randrange(1, spec.dim)
    first = template(rng, GenSpec(spec.family, k, spec.seed, spec.entry_pool, spec.max_attempts))
    second = template(rng, GenSpec(spec.family, spec.dim - k, spec.seed, spec.entry_pool, spec.max_attempts))
    return ClineQuadruple(*(block_diag(getattr(first, m), getattr(second, m)) for m in "abcd"), spec.family)


def _t_mz_direct_sum(rng, spec) -> ClineQuadruple:
    return _direct_sum(rng, spec, lambda r, s: rng.choice((_t_equal, _t_lz_as, _t_shifts))(r, s))


# strategy name -> (template, conjugate afterwards?)
_STRATEGIES: dict[Family, list[tuple[str, Callable, bool]]] = {
    Family.CLASSICAL: [("random-pair", _t_classical, False)],
    Family.LIAN_ZENG: [("sandwich-kernel", _t_lian_zeng, False)],
    Family.MILLER_ZGUITTI: [
        ("equal", _t_equal, True),
        ("d=a sandwich-kernel", _t_lz_as, True),
        ("weighted-shift", _t_shifts, True),
        ("direct-sum", _t_mz_direct_sum, True),
    ],
    Family.BANACH_WEAK: [
        ("weighted-shift", _t_shifts, True),
        ("sparse-rejection", _t_sparse, False),
        ("idempotent-defect", _t_idempotent_defect, False),
    ],
    Family.RING_FOUR: [
        ("classical", _t_classical_as, True),
        ("d=a sandwich-kernel", _t_lz_as, True),
        ("equal-products", _t_equal_products, False),
        ("weighted-shift", _t_shifts, True),
        ("sparse-rejection", _t_sparse, False),
    ],
}


def generate(spec: GenSpec) -> Generated:
    """Draw one conditioned quadruple; the strategy is chosen by the seed."""
    rng = random.Random(spec.seed)
    name, template, conj = rng.choice(_STRATEGIES[spec.family])
    for attempt in range(1, spec.max_attempts + 1):
        q = template(rng, spec)
        if conj:
            q = _maybe_conjugate(rng, q)
        if check_family(q, spec.family).overall:
            report = check_conditions(q)
            return Generated(q, name, attempt, report.extra["families"])
    raise GenerationFailed(f"{spec.family.value}/{name}: no instance after {spec.max_attempts} attempts")


def gen_classical(spec: GenSpec) -> ClineQuadruple:
    return generate(_as(spec, Family.CLASSICAL)).quad


def gen_lian_zeng(spec: GenSpec) -> ClineQuadruple:
    return generate(_as(spec, Family.LIAN_ZENG)).quad


def gen_miller_zguitti(spec: GenSpec) -> ClineQuadruple:
    return generate(_as(spec, Family.MILLER_ZGUITTI)).quad


def gen_banach_weak(spec: GenSpec) -> ClineQuadruple:
    return generate(_as(spec, Family.BANACH_WEAK)).quad


def gen_ring_four(spec: GenSpec) -> ClineQuadruple:
    return generate(_as(spec, Family.RING_FOUR)).quad


def _as(spec: GenSpec, family: Family) -> GenSpec:
    if spec.family == family:
        return spec
    return GenSpec(family, spec.dim, spec.seed, spec.entry_pool, spec.max_attempts)


GENERATORS = {
    Family.CLASSICAL: gen_classical,
    Family.RING_FOUR: gen_ring_four,
    Family.BANACH_WEAK: gen_banach_weak,
    Family.LIAN_ZENG: gen_lian_zeng,
    Family.MILLER_ZGUITTI: gen_miller_zguitti,
}


def example_3_7() -> ClineQuadruple:
    """The 4x4 shift quadruple: a = b = c = J_4, d = J_4 with (1,2) entry 2."""
    j = Matrix.shift(4)
    d = Matrix.shift(4, [2, 1, 1])
    return ClineQuadruple(j, j, j, d, Family.BANACH_WEAK)
