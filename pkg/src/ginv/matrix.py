"""Dense matrices over the exact or float scalar backend.

A :class:`Matrix` is immutable: ``rows`` is a tuple of tuples and every
operation returns a new matrix.  Square matrices are the public currency;
rectangular ones appear internally as rank-factorization factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import BackendMismatch, DimensionMismatch, DimensionTooLarge, Singular
from .scalar import (
    DEFAULT_TOL,
    EXACT,
    F64,
    GaussianRational,
    Tolerance,
    convert,
    one,
    zero,
)

COMMUTANT_MAX_DIM = 6


@dataclass(frozen=True)
class Matrix:
    rows: tuple
    backend: str = EXACT

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], backend: str = EXACT) -> Matrix:
        data = tuple(tuple(convert(x, backend) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(data, backend)

    @classmethod
    def identity(cls, n: int, backend: str = EXACT) -> Matrix:
        z, o = zero(backend), one(backend)
        return cls(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), backend)

    @classmethod
    def zeros(cls, m: int, k: int | None = None, backend: str = EXACT) -> Matrix:
        k = m if k is None else k
        z = zero(backend)
        return cls(tuple((z,) * k for _ in range(m)), backend)

    @classmethod
    def diag(cls, values: Sequence, backend: str = EXACT) -> Matrix:
        n = len(values)
        z = zero(backend)
        vals = [convert(v, backend) for v in values]
        return cls(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), backend)

    @classmethod
    def shift(cls, n: int, weights: Sequence | None = None, backend: str = EXACT) -> Matrix:
        """Superdiagonal shift J_n, optionally with per-entry weights."""
        weights = [1] * (n - 1) if weights is None else list(weights)
        if len(weights) != n - 1:
            raise DimensionMismatch(f"shift of size {n} needs {n - 1} weights")
        z = zero(backend)
        rows = []
        for i in range(n):
            rows.append(tuple(convert(weights[i], backend) if j == i + 1 else z for j in range(n)))
        return cls(tuple(rows), backend)

    @classmethod
    def unit(cls, n: int, i: int, j: int, backend: str = EXACT) -> Matrix:
        """Matrix unit e_ij (zero-based indices)."""
        z, o = zero(backend), one(backend)
        return cls(tuple(tuple(o if (p, q) == (i, j) else z for q in range(n)) for p in range(n)), backend)

    # -- shape --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        m, k = self.shape
        if m != k:
            raise DimensionMismatch(f"expected a square matrix, got {m}x{k}")
        return m

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(tuple(tuple(r[j] for j in idx) for r in self.rows), self.backend)

    def take_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix(tuple(self.rows[i] for i in idx), self.backend)

    @property
    def T(self) -> Matrix:
        return Matrix(tuple(zip(*self.rows)), self.backend)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BackendMismatch(f"{self.backend} vs {other.backend}")

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.backend,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.backend,
        )

    def __neg__(self) -> Matrix:
        return Matrix(tuple(tuple(-x for x in r) for r in self.rows), self.backend)

    def scale(self, s) -> Matrix:
        s = convert(s, self.backend)
        return Matrix(tuple(tuple(s * x for x in r) for r in self.rows), self.backend)

    def __pow__(self, k: int) -> Matrix:
        if k < 0:
            raise ValueError("negative powers: use inverse()")
        result = Matrix.identity(self.n, self.backend)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    # -- comparisons --------------------------------------------------------

    def max_abs(self) -> float:
        return max((abs(x) for r in self.rows for x in r), default=0.0)

    def is_zero(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        if self.exact:
            return not any(x for r in self.rows for x in r)
        return self.max_abs() <= tol.eq_tol

    def equals(self, other: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
        """Exact entrywise equality, or max-entry difference <= eq_tol in float mode."""
        self._check(other)
        if self.shape != other.shape:
            return False
        if self.exact:
            return self.rows == other.rows
        return (self - other).max_abs() <= tol.eq_tol

    def residual(self, other: Matrix) -> float:
        """Max-entry absolute difference."""
        return (self - other).max_abs()

    # -- conversion ---------------------------------------------------------

    def to_backend(self, backend: str) -> Matrix:
        if backend == self.backend:
            return self
        if backend == F64:
            return Matrix(tuple(tuple(complex(x) for x in r) for r in self.rows), F64)
        return Matrix.from_rows(self.rows, EXACT)

    def to_f64(self) -> Matrix:
        return self.to_backend(F64)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __str__(self):
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self.rows)


def block_diag(*blocks: Matrix) -> Matrix:
    backend = blocks[0].backend
    n = sum(b.shape[0] for b in blocks)
    k = sum(b.shape[1] for b in blocks)
    z = zero(backend)
    rows = []
    col = 0
    for b in blocks:
        bm, bk = b.shape
        for r in b.rows:
            rows.append((z,) * col + tuple(r) + (z,) * (k - col - bk))
        col += bk
    assert len(rows) == n
    return Matrix(tuple(rows), backend)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    a._check(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"{a.shape} @ {b.shape}")
    cols = tuple(zip(*b.rows))
    if a.exact:
        if _is_real(a) and _is_real(b):
            return _real_exact_mul(a, cols)
        z = GaussianRational(0)
        return Matrix(tuple(tuple(sum(map(_mul, r, c), z) for c in cols) for r in a.rows), EXACT)
    return Matrix(tuple(tuple(sum(map(_mul, r, c), 0j) for c in cols) for r in a.rows), F64)


def _mul(x, y):
    return x * y


def _is_real(a: Matrix) -> bool:
    return not any(x.im for r in a.rows for x in r)


def _real_exact_mul(a: Matrix, cols) -> Matrix:
    # clear denominators, multiply integers, divide once per entry
    da = lcm(*(x.re.denominator for r in a.rows for x in r))
    db = lcm(*(x.re.denominator for c in cols for x in c))
    ia = [[x.re.numerator * (da // x.re.denominator) for x in r] for r in a.rows]
    ib = [[x.re.numerator * (db // x.re.denominator) for x in c] for c in cols]
    den = da * db
    zf = Fraction(0)
    out = []
    for r in ia:
        row = []
        for c in ib:
            s = sum(map(_mul, r, c))
            g = GaussianRational.__new__(GaussianRational)
            g.re = Fraction(s, den) if s else zf
            g.im = zf
            row.append(g)
        out.append(tuple(row))
    return Matrix(tuple(out), EXACT)


# -- elimination --------------------------------------------------------------


def _zero_threshold(a: Matrix, tol: Tolerance, scale: float = 0.0) -> float:
    return tol.rank_tol * max(a.max_abs(), scale)


def rref(a: Matrix, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Float mode uses partial pivoting (largest magnitude in the column) and
    treats entries at or below ``rank_tol * max|a_ij|`` as zero.  Exact mode
    takes the first nonzero entry.
    """
    m, k = a.shape
    work = [list(r) for r in a.rows]
    pivots: list[int] = []
    row = 0
    if a.exact:
        for col in range(k):
            if row == m:
                break
            p = next((i for i in range(row, m) if work[i][col]), None)
            if p is None:
                continue
            work[row], work[p] = work[p], work[row]
            inv = work[row][col].reciprocal()
            work[row] = [x * inv for x in work[row]]
            prow = work[row]
            for i in range(m):
                f = work[i][col]
                if i != row and f:
                    work[i] = [x - f * y for x, y in zip(work[i], prow)]
            pivots.append(col)
            row += 1
        return work, pivots

    thresh = _zero_threshold(a, tol, scale)
    for col in range(k):
        if row == m:
            break
        p = max(range(row, m), key=lambda i: abs(work[i][col]))
        if abs(work[p][col]) <= thresh:
            for i in range(row, m):
                work[i][col] = 0j
            continue
        work[row], work[p] = work[p], work[row]
        piv = work[row][col]
        work[row] = [x / piv for x in work[row]]
        prow = work[row]
        for i in range(m):
            if i != row:
                f = work[i][col]
                if f:
                    work[i] = [x - f * y for x, y in zip(work[i], prow)]
                work[i][col] = 0j
        pivots.append(col)
        row += 1
    return work, pivots


def _gaussian_integer_rows(a: Matrix) -> list[list[tuple[int, int]]]:
    out = []
    for r in a.rows:
        den = lcm(*(x.re.denominator for x in r), *(x.im.denominator for x in r))
        out.append([(int(x.re * den), int(x.im * den)) for x in r])
    return out


def _bareiss_rank(rows: list[list[tuple[int, int]]]) -> int:
    # fraction-free elimination over Z[i]; every division below is exact
    m, k = len(rows), len(rows[0])
    work = [list(r) for r in rows]
    prev = (1, 0)
    rank = 0
    for col in range(k):
        if rank == m:
            break
        p = next((i for i in range(rank, m) if work[i][col] != (0, 0)), None)
        if p is None:
            continue
        work[rank], work[p] = work[p], work[rank]
        pr, pi = work[rank][col]
        qr, qi = prev
        qn = qr * qr + qi * qi
        for i in range(rank + 1, m):
            fr, fi = work[i][col]
            new = []
            for j in range(k):
                xr, xi = work[i][j]
                yr, yi = work[rank][j]
                # (p*x - f*y) / prev
                nr = pr * xr - pi * xi - (fr * yr - fi * yi)
                ni = pr * xi + pi * xr - (fr * yi + fi * yr)
                new.append(((nr * qr + ni * qi) // qn, (ni * qr - nr * qi) // qn))
            work[i] = new
        prev = (pr, pi)
        rank += 1
    return rank


def rank(a: Matrix, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> int:
    """Exact rank over Q(i) by fraction-free elimination, or float numerical rank.

    In float mode an entry counts as zero at or below ``rank_tol * max(max|a_ij|, scale)``;
    ``scale`` lets callers judge a computed product against the size of its factors.
    """
    if a.exact:
        return _bareiss_rank(_gaussian_integer_rows(a))
    return len(rref(a, tol, scale)[1])


def inverse(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    n = a.n
    o, z = one(a.backend), zero(a.backend)
    aug = Matrix(
        tuple(tuple(r) + tuple(o if i == j else z for j in range(n)) for i, r in enumerate(a.rows)),
        a.backend,
    )
    if a.exact:
        work, pivots = rref(aug, tol)
    else:
        # threshold must come from a, not the identity block
        work, pivots = _rref_with_threshold(aug, _zero_threshold(a, tol), n)
    if [p for p in pivots if p < n] != list(range(n)):
        raise Singular(f"matrix of size {n} is singular")
    return Matrix(tuple(tuple(r[n:]) for r in work), a.backend)


def _rref_with_threshold(a: Matrix, thresh: float, ncols: int):
    # float RREF pivoting only on the first ncols columns
    m, k = a.shape
    work = [list(r) for r in a.rows]
    pivots = []
    row = 0
    for col in range(ncols):
        if row == m:
            break
        p = max(range(row, m), key=lambda i: abs(work[i][col]))
        if abs(work[p][col]) <= thresh:
            continue
        work[row], work[p] = work[p], work[row]
        piv = work[row][col]
        work[row] = [x / piv for x in work[row]]
        prow = work[row]
        for i in range(m):
            if i != row:
                f = work[i][col]
                if f:
                    work[i] = [x - f * y for x, y in zip(work[i], prow)]
        pivots.append(col)
        row += 1
    return work, pivots


def is_invertible(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return rank(a, tol) == a.n


def full_rank_factorization(
    a: Matrix, tol: Tolerance = DEFAULT_TOL, rank: int | None = None
) -> tuple[Matrix, Matrix]:
    """Factor a = B C with B (m x r) and C (r x k) of full rank r >= 1.

    Exact mode: B holds the pivot columns of ``a`` and C the nonzero rows of
    its RREF.  Float mode: truncated SVD, B = U_r S_r and C = V_r^H, with r
    taken from ``rank`` when the caller already knows it.
    """
    if a.exact:
        work, pivots = rref(a, tol)
        r = len(pivots)
        if rank is not None and rank != r:
            raise ValueError(f"prescribed rank {rank} but exact rank is {r}")
        if r == 0:
            raise Singular("zero matrix has no full-rank factorization")
        return a.columns(pivots), Matrix(tuple(tuple(row) for row in work[:r]), a.backend)
    r = len(rref(a, tol)[1]) if rank is None else rank
    if r == 0:
        raise Singular("zero matrix has no full-rank factorization")
    u, sv, vh = np.linalg.svd(np.array(a.rows, dtype=complex))
    left = u[:, :r] * sv[:r]
    right = vh[:r, :]
    return (
        Matrix(tuple(tuple(complex(x) for x in row) for row in left), F64),
        Matrix(tuple(tuple(complex(x) for x in row) for row in right), F64),
    )


def nullspace(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> list[list]:
    """Basis vectors (as lists) of {x : a x = 0}."""
    m, k = a.shape
    work, pivots = rref(a, tol)
    free = [j for j in range(k) if j not in pivots]
    z, o = zero(a.backend), one(a.backend)
    basis = []
    for f in free:
        v = [z] * k
        v[f] = o
        for i, p in enumerate(pivots):
            v[p] = -work[i][f]
        basis.append(v)
    return basis


def commutant_basis(a: Matrix, max_dim: int = COMMUTANT_MAX_DIM) -> list[Matrix]:
    """Basis of comm(a) = {X : Xa = aX}, from the n^2 x n^2 linear system."""
    n = a.n
    if not a.exact:
        raise BackendMismatch("commutant_basis requires the exact backend")
    if n > max_dim:
        raise DimensionTooLarge(f"commutant of a {n}x{n} matrix exceeds bound {max_dim}")
    z = zero(EXACT)
    system = []
    for p in range(n):
        for q in range(n):
            row = [z] * (n * n)
            # (Xa)_pq = sum_k X_pk a_kq ; (aX)_pq = sum_k a_pk X_kq
            for k in range(n):
                row[p * n + k] = row[p * n + k] + a.rows[k][q]
                row[k * n + q] = row[k * n + q] - a.rows[p][k]
            system.append(tuple(row))
    vecs = nullspace(Matrix(tuple(system), EXACT))
    return [Matrix(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), EXACT) for v in vecs]
