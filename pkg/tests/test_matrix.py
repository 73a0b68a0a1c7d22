from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given

from conftest import exact_matrices, from_sympy, to_sympy
from ginv.errors import BackendMismatch, DimensionMismatch, DimensionTooLarge, Singular
from ginv.generate import example_3_7
from ginv.matrix import (
    Matrix,
    commutant_basis,
    full_rank_factorization,
    inverse,
    mat_mul,
    nullspace,
    rank,
)
from ginv.scalar import F64

J4 = Matrix.shift(4)


class TestMatMul:
    def test_identity(self):
        assert Matrix.identity(2) @ Matrix.identity(2) == Matrix.identity(2)

    def test_shift_square(self):
        expected = Matrix.unit(4, 0, 2) + Matrix.unit(4, 1, 3)
        assert mat_mul(J4, J4) == expected

    def test_example_d_times_b(self):
        q = example_3_7()
        assert q.d @ q.b == Matrix.unit(4, 0, 2).scale(2) + Matrix.unit(4, 1, 3)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Matrix.identity(2) @ Matrix.identity(3)
        with pytest.raises(BackendMismatch):
            Matrix.identity(2) @ Matrix.identity(2, F64)

    @given(exact_matrices(complex_entries=True), exact_matrices(complex_entries=True))
    def test_matches_sympy(self, a, b):
        if a.n != b.n:
            return
        assert a @ b == from_sympy(to_sympy(a) * to_sympy(b))


class TestRank:
    @pytest.mark.parametrize(
        "m, expected", [(Matrix.zeros(3), 0), (Matrix.identity(5), 5), (J4, 3)]
    )
    def test_examples(self, m, expected):
        assert rank(m) == expected
        assert rank(m.to_f64()) == expected

    @given(exact_matrices(max_dim=5, complex_entries=True))
    def test_matches_sympy(self, a):
        assert rank(a) == to_sympy(a).rank()

    @given(exact_matrices(max_dim=5))
    def test_float_agrees_on_small_entries(self, a):
        assert rank(a.to_f64()) == rank(a)

    @given(exact_matrices(), exact_matrices())
    def test_product_bound(self, a, b):
        if a.n == b.n:
            assert rank(a @ b) <= min(rank(a), rank(b))

    def test_float_rank_is_scale_invariant(self):
        a = Matrix.from_rows([[1e-12, 2e-12], [2e-12, 4e-12]], F64)
        assert rank(a) == 1


class TestInverse:
    def test_examples(self):
        assert inverse(Matrix.identity(4)) == Matrix.identity(4)
        assert inverse(Matrix.diag([2, Fraction(1, 2)])) == Matrix.diag([Fraction(1, 2), 2])
        eye = Matrix.identity(4)
        assert inverse(eye - J4 @ J4) == eye + J4 @ J4

    def test_singular(self):
        with pytest.raises(Singular):
            inverse(J4)
        with pytest.raises(Singular):
            inverse(J4.to_f64())

    @given(exact_matrices(max_dim=5, complex_entries=True))
    def test_exact_two_sided(self, a):
        try:
            x = inverse(a)
        except Singular:
            assert rank(a) < a.n
            return
        eye = Matrix.identity(a.n)
        assert x @ a == eye and a @ x == eye

    @given(exact_matrices(max_dim=5))
    def test_float_matches_numpy(self, a):
        if rank(a) < a.n:
            return
        x = inverse(a.to_f64())
        ref = np.linalg.inv(np.array(a.to_f64().rows, dtype=complex))
        assert np.allclose(np.array(x.rows), ref, atol=1e-9)


class TestFactorization:
    @given(exact_matrices(max_dim=5, complex_entries=True))
    def test_full_rank(self, a):
        r = rank(a)
        if r == 0:
            with pytest.raises(Singular):
                full_rank_factorization(a)
            return
        b, c = full_rank_factorization(a)
        assert b.shape == (a.n, r) and c.shape == (r, a.n)
        assert b @ c == a
        assert rank(b) == r and rank(c) == r

    def test_float_prescribed_rank(self):
        a = (J4 @ J4).to_f64()
        b, c = full_rank_factorization(a, rank=2)
        assert (b @ c).equals(a)

    @given(exact_matrices(max_dim=4))
    def test_nullspace_matches_sympy(self, a):
        basis = nullspace(a)
        assert len(basis) == len(to_sympy(a).nullspace())
        for v in basis:
            assert all(sum(a[i, j] * v[j] for j in range(a.n)) == 0 for i in range(a.n))


class TestCommutant:
    def test_identity(self):
        assert len(commutant_basis(Matrix.identity(2))) == 4

    def test_distinct_eigenvalues(self):
        assert len(commutant_basis(Matrix.diag([1, 2]))) == 2

    def test_shift_span(self):
        basis = commutant_basis(Matrix.shift(2))
        assert len(basis) == 2
        span = sympy.Matrix([[*to_sympy(m)] for m in basis]).T
        target = sympy.Matrix([[*to_sympy(Matrix.identity(2))], [*to_sympy(Matrix.shift(2))]]).T
        assert span.rank() == 2 and span.row_join(target).rank() == 2

    @given(exact_matrices(max_dim=4))
    def test_members_commute_and_are_independent(self, a):
        basis = commutant_basis(a)
        assert all(k @ a == a @ k for k in basis)
        stacked = sympy.Matrix([[*to_sympy(k)] for k in basis]) if basis else sympy.zeros(0, 0)
        assert stacked.rank() == len(basis)

    def test_bounds(self):
        with pytest.raises(DimensionTooLarge):
            commutant_basis(Matrix.identity(7))
        with pytest.raises(BackendMismatch):
            commutant_basis(Matrix.identity(2, F64))
