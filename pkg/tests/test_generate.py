import random
from fractions import Fraction

import pytest

from ginv.cline import ClineQuadruple, Family, check_conditions
from ginv.errors import GenerationFailed
from ginv.generate import (
    GENERATORS,
    GenSpec,
    example_3_7,
    gen_banach_weak,
    gen_lian_zeng,
    generate,
    random_unimodular,
    sandwich_kernel,
)
from ginv.matrix import Matrix, rank


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("dim", [1, 2, 4])
def test_determinism_and_soundness(family, dim):
    for seed in range(5):
        spec = GenSpec(family, dim, seed)
        q = GENERATORS[family](spec)
        assert q == GENERATORS[family](spec)
        assert q.family == family and q.n == dim
        report = check_conditions(q)
        assert report.overall
        assert all(c.residual == 0 for c in report.conditions)


def test_different_seeds_differ():
    qs = {str(gen_banach_weak(GenSpec(Family.BANACH_WEAK, 3, s)).to_json()) for s in range(10)}
    assert len(qs) > 5


def test_lian_zeng_structure():
    for seed in range(10):
        q = gen_lian_zeng(GenSpec(Family.LIAN_ZENG, 3, seed))
        assert q.d == q.a
        assert q.a @ q.b @ q.a == q.a @ q.c @ q.a


def test_lian_zeng_reaches_non_classical():
    assert any(
        gen_lian_zeng(GenSpec(Family.LIAN_ZENG, 3, s)).c != gen_lian_zeng(GenSpec(Family.LIAN_ZENG, 3, s)).b
        for s in range(30)
    )


def test_sandwich_kernel():
    j3 = Matrix.shift(3)
    basis = sandwich_kernel(j3)
    assert all(j3 @ m @ j3 == Matrix.zeros(3) for m in basis)
    e13 = Matrix.unit(3, 0, 2)
    assert j3 @ e13 @ j3 == Matrix.zeros(3)
    # (J N J)_{pq} = N_{p+1,q-1}: four entries of N are forced to zero
    assert len(basis) == 9 - 4
    flat = Matrix.from_rows([[x for row in m.rows for x in row] for m in basis])
    with_e13 = Matrix.from_rows(list(flat.rows) + [[x for row in e13.rows for x in row]])
    assert rank(with_e13) == rank(flat) == 5
    assert sandwich_kernel(Matrix.identity(3)) == []


def test_weak_only_instances_exist_at_dim_2():
    found = []
    for seed in range(40):
        g = generate(GenSpec(Family.BANACH_WEAK, 2, seed))
        if not g.ring_four:
            found.append(g)
    assert found
    assert {g.strategy for g in found} <= {"sparse-rejection", "idempotent-defect", "weighted-shift"}


def test_banach_weak_non_degenerate_coverage():
    assert any(
        (lambda q: q.a @ q.c != q.d @ q.b)(gen_banach_weak(GenSpec(Family.BANACH_WEAK, 4, s))) for s in range(20)
    )


def test_miller_zguitti_never_emits_example():
    q = example_3_7().with_family(Family.MILLER_ZGUITTI)
    assert not check_conditions(q).overall


def test_shift_examples():
    for w in ([2, 1, 1], [3, 1, 1]):
        j = Matrix.shift(4)
        q = ClineQuadruple(j, j, j, Matrix.shift(4, w), Family.BANACH_WEAK)
        assert check_conditions(q).overall
    j3 = Matrix.shift(3)
    assert check_conditions(ClineQuadruple(j3, j3, j3, j3, Family.MILLER_ZGUITTI)).overall


def test_worked_example_matrices():
    q = example_3_7()
    ac, db = q.a @ q.c, q.d @ q.b
    z = Matrix.zeros(4)
    assert ac @ ac == z and db @ ac == z and db @ db == z and ac @ db == z
    assert ac @ q.d != q.d @ q.b @ q.d
    assert q.b @ q.d == Matrix.shift(4) @ Matrix.shift(4)


def test_worked_example_products_sit_in_the_corner():
    # direct multiplication puts the single nonzero entry of acd and dbd at (1, 4)
    q = example_3_7()
    corner = [[0, 0, 0, 1], [0] * 4, [0] * 4, [0] * 4]
    assert q.a @ q.c @ q.d == Matrix.from_rows(corner)
    assert q.d @ q.b @ q.d == Matrix.from_rows(corner).scale(2)


def test_unimodular_pair():
    rng = random.Random(3)
    t, t_inv = random_unimodular(rng, 4)
    assert t @ t_inv == Matrix.identity(4)


def test_generation_failed_is_clean():
    # an all-zero pool leaves sparse rejection nothing to draw from
    with pytest.raises(GenerationFailed):
        for seed in range(20):
            generate(GenSpec(Family.BANACH_WEAK, 3, seed, entry_pool=(Fraction(0),), max_attempts=1))


def test_spec_validation():
    with pytest.raises(ValueError):
        GenSpec(Family.RING_FOUR, 0, 0)
    with pytest.raises(ValueError):
        GenSpec(Family.RING_FOUR, 2, 0, entry_pool=())
    with pytest.raises(ValueError):
        GenSpec("no-such-family", 2, 0)


def test_generated_ranks_vary():
    ranks = {rank(gen_lian_zeng(GenSpec(Family.LIAN_ZENG, 3, s)).a) for s in range(20)}
    assert len(ranks) > 1
