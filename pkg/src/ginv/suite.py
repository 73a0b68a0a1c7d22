"""Property-suite runner: every invariant, executed over seeded corpora.

The corpus is the cross product seeds x dims x families, walked in sorted
order so the report is byte-for-byte reproducible.  Each property is tallied
as pass/fail; failures keep the offending instance as quadruple JSON so it
can be replayed with ``ginv check`` / ``ginv transfer``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import cline, drazin as gi, spectral
from .cline import ClineQuadruple, Family, check_conditions
from .errors import GinvError, NoGroupInverse, Singular, SingularAC
from .generate import GENERATORS, GenSpec, random_invertible, random_matrix, random_unimodular
from .matrix import Matrix, block_diag, commutant_basis, inverse, rank
from .scalar import DEFAULT_TOL, F64, Tolerance

MAX_DUMPS = 5
COMM2_MAX_DIM = 4
FLOAT_TRANSFER_TOL = 1e-8
JACOBSON_FLOAT_TOL = 1e-10


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    dumps: list = field(default_factory=list)

    def record(self, ok: bool, context: dict):
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if len(self.dumps) < MAX_DUMPS:
            self.dumps.append(context)


class Suite:
    def __init__(self, tol: Tolerance = DEFAULT_TOL):
        self.tol = tol
        self.tallies: dict[str, Tally] = {}
        self.observations: dict[str, int] = {}

    def check(self, name: str, fn: Callable[[], bool], context: dict):
        try:
            ok = bool(fn())
            ctx = context
        except GinvError as exc:
            ok = False
            ctx = dict(context, error=f"{type(exc).__name__}: {exc}")
        self.tallies.setdefault(name, Tally()).record(ok, ctx)

    def observe(self, name: str, amount: int = 1):
        self.observations[name] = self.observations.get(name, 0) + amount

    # -- matrix-level properties --------------------------------------------------

    def matrix_properties(self, seed: int, dim: int):
        rng = random.Random(f"matrix:{seed}:{dim}")
        a = random_matrix(rng, dim)
        b = random_matrix(rng, dim)
        ctx = {"seed": seed, "dim": dim, "a": _mjson(a), "b": _mjson(b)}

        def inverse_exact():
            try:
                x = inverse(a)
            except Singular:
                return rank(a) < dim
            return (x @ a).rows == Matrix.identity(dim).rows == (a @ x).rows

        self.check("core: inverse(a) a = I exactly", inverse_exact, ctx)
        self.check("core: rank(ab) <= min(rank a, rank b)", lambda: rank(a @ b) <= min(rank(a), rank(b)), ctx)

        def commutant_ok():
            basis = commutant_basis(a)
            if any(not (k @ a).equals(a @ k) for k in basis):
                return False
            flat = Matrix(tuple(tuple(x for r in k.rows for x in r) for k in basis)) if basis else None
            return flat is None or rank(flat) == len(basis)

        self.check("core: commutant basis commutes and is independent", commutant_ok, ctx)
        self.check(
            "core: float rank equals exact rank",
            lambda: rank(a.to_f64(), self.tol) == rank(a) and rank(b.to_f64(), self.tol) == rank(b),
            ctx,
        )

        def drazin_axioms():
            res = gi.drazin(a)
            report = gi.verify_drazin_axioms(a, res.inverse, res.index)
            return report.overall and all(c.residual == 0 for c in report.conditions)

        self.check("drazin: axioms hold with zero residual (incl. comm2)", drazin_axioms, ctx)

        def index_zero():
            res = gi.drazin(a)
            try:
                x = inverse(a)
            except Singular:
                return res.index > 0
            return res.index == 0 and res.inverse.equals(x)

        self.check("drazin: index 0 iff invertible, then a^D = a^-1", index_zero, ctx)

        def similarity_oracle():
            return block_oracle(rng, dim)

        self.check("drazin: similarity-block oracle", similarity_oracle, ctx)

    # -- quadruple-level properties -----------------------------------------------

    def quadruple_properties(self, family: Family, seed: int, dim: int, generator):
        spec = GenSpec(family, dim, seed)
        ctx = {"family": family.value, "seed": seed, "dim": dim}
        try:
            q = generator(spec)
        except GinvError as exc:
            self.check("gen: generation succeeds", lambda: False, dict(ctx, error=str(exc)))
            return
        ctx = dict(ctx, quadruple=q.to_json())
        tol = self.tol

        self.check("gen: deterministic", lambda: generator(spec) == q, ctx)
        report = check_conditions(q, tol)
        self.check("gen: emitted quadruple satisfies its family", lambda: report.overall, ctx)
        if not report.overall:
            return
        fams = report.extra["families"]
        weak_only = fams[Family.BANACH_WEAK.value] and not fams[Family.RING_FOUR.value]
        if weak_only:
            self.observe(f"weak-only instances (dim {dim})")
            ctx = dict(ctx, weak_only=True)

        self.check(
            "cline: family hierarchy (classical, miller-zguitti => ring-four => banach-weak)",
            lambda: hierarchy_ok(fams),
            ctx,
        )
        self.check("serialize: quadruple JSON round-trip", lambda: ClineQuadruple.from_json(q.to_json()) == q, ctx)

        ac, bd = q.a @ q.c, q.b @ q.d
        acd = gi.drazin(ac)
        h = acd.inverse
        k_bd = gi.index(bd)

        def printed_formula():
            e = cline.printed_transfer(q, h)
            rep = gi.verify_drazin_axioms(bd, e, k_bd, comm2_max_dim=0)
            return rep.overall

        self.check("cline: b((ac)^D)^2 d is the Drazin inverse of bd", printed_formula, ctx)
        if family == Family.BANACH_WEAK:
            self.check("cline: p-Drazin collapse, printed formula", lambda: cline.pdrazin_collapse_check(q, tol), ctx)

        transferred = cline.transfer_gdrazin(q, acd, tol)

        def engine_transfer():
            rep = gi.verify_drazin_axioms(bd, transferred.inverse, transferred.index, comm2_max_dim=0)
            return rep.overall and transferred.inverse == gi.drazin(bd).inverse

        self.check("cline: transfer_gdrazin passes the axiom verifier", engine_transfer, ctx)

        def float_transfer():
            qf = q.to_backend(F64)
            res = cline.transfer_gdrazin(qf, gi.drazin(qf.a @ qf.c, tol), tol)
            bdf = qf.b @ qf.d
            x = res.inverse
            ak = bdf ** res.index
            worst = max(
                (x @ bdf @ x).residual(x),
                (bdf @ x).residual(x @ bdf),
                (ak @ bdf @ x).residual(ak),
            )
            return worst <= FLOAT_TRANSFER_TOL

        self.check("cline: float transfer residuals <= 1e-8", float_transfer, ctx)

        if dim <= COMM2_MAX_DIM:

            def comm2():
                e = transferred.inverse
                return all((e @ m).equals(m @ e) for m in commutant_basis(bd))

            self.check("cline: transferred inverse lies in comm2(bd)", comm2, ctx)

        self.check(
            "cline: reverse transfer recovers (ac)^D",
            lambda: cline.reverse_transfer(q, transferred.inverse, tol) == h,
            ctx,
        )

        def bound():
            _, ok = cline.transfer_drazin_with_bound(q, acd, tol)
            return ok

        self.check("cline: index bound", bound, ctx)
        self.check("cline: nilpotency transfer", lambda: cline.qnil_transfer_check(q, tol), ctx)

        eye = Matrix.identity(dim)
        left_inv = rank(eye - ac) == dim
        right_inv = rank(eye - bd) == dim
        self.check("cline: I - ac invertible iff I - bd invertible", lambda: left_inv == right_inv, ctx)
        if left_inv and fams[Family.RING_FOUR.value]:
            self.check("cline: Jacobson-type inverse (exact)", lambda: _jacobson_ok(q, tol), ctx)

            def jacobson_float():
                qf = q.to_backend(F64)
                x = cline.jacobson_inverse(qf, Tolerance(eq_tol=JACOBSON_FLOAT_TOL, rank_tol=tol.rank_tol))
                m = Matrix.identity(dim, F64) - qf.b @ qf.d
                return (x @ m).residual(Matrix.identity(dim, F64)) <= JACOBSON_FLOAT_TOL

            self.check("cline: Jacobson-type inverse (float, 1e-10)", jacobson_float, ctx)
        elif left_inv:
            try:
                _jacobson_ok(q.with_family(Family.RING_FOUR), tol)
            except GinvError:
                self.observe("jacobson formula inapplicable (ring-four fails)")

        if family == Family.LIAN_ZENG:
            cands = cline.lian_zeng_candidates(q, tol)
            for name, rep in cands.items():
                if rep.overall:
                    self.observe(f"lian-zeng variant {name} passes axioms")
            if acd.index <= 1:
                self.check("cline: group inverse transfer", lambda: _group_ok(q, tol), ctx)
            self.observe("lian-zeng instances")
            if q.c != q.b:
                self.observe("lian-zeng instances with c != b")
        if family == Family.BANACH_WEAK and ac != q.d @ q.b:
            self.observe(f"banach-weak instances with ac != db (dim {dim})")

        self.spectral_properties(q, ctx)

    def spectral_properties(self, q: ClineQuadruple, ctx: dict):
        tol = self.tol
        qf = q.to_backend(F64)
        self.check("spectral: nonzero spectra of ac and bd match", lambda: spectral.nonzero_spectrum_equal(qf, tol), ctx)
        lambdas = spectral.lambda_samples(qf, 20, tol, seed=ctx["seed"])

        def transfer_all():
            # each float lambda is a dyadic rational, so both sides are decided exactly
            return all(a == b for a, b in (spectral.invertibility_sides(q, lam, tol) for lam in lambdas))

        self.check("spectral: invertibility transfer at 20 lambdas", transfer_all, ctx)

        def eigen_consistency():
            # eigenvalues from the exact charpoly: a defective eigenvalue computed
            # in float is only sqrt(eps)-accurate and would look regular
            for v in spectral.spectrum(q.a @ q.c, tol).nonzero().values:
                if any(spectral.invertibility_sides(qf, v, tol)):
                    return False
            return True

        self.check("spectral: eigenvalues of ac are singular points on both sides", eigen_consistency, ctx)

    # -- report ---------------------------------------------------------------------

    def report(self, seeds: int, dims: list[int]) -> dict:
        props = {
            name: {"passed": t.passed, "failed": t.failed, "failing_instances": t.dumps}
            for name, t in sorted(self.tallies.items())
        }
        return {
            "seeds": list(range(seeds)),
            "dims": dims,
            "families": [f.value for f in Family],
            "properties": props,
            "observations": dict(sorted(self.observations.items())),
            "total_failures": sum(t.failed for t in self.tallies.values()),
        }


def _mjson(m: Matrix) -> dict:
    from .serialize import matrix_to_json

    return matrix_to_json(m)


def hierarchy_ok(fams: dict) -> bool:
    rf = fams[Family.RING_FOUR.value]
    if fams[Family.CLASSICAL.value] and not rf:
        return False
    if fams[Family.MILLER_ZGUITTI.value] and not rf:
        return False
    if rf and not fams[Family.BANACH_WEAK.value]:
        return False
    return True


def _jacobson_ok(q: ClineQuadruple, tol: Tolerance) -> bool:
    try:
        cline.jacobson_inverse(q, tol)
    except SingularAC:
        return False
    return True


def _group_ok(q: ClineQuadruple, tol: Tolerance) -> bool:
    try:
        cline.transfer_group(q, None, tol)
    except NoGroupInverse:
        return False
    return True


def block_oracle(rng: random.Random, dim: int) -> bool:
    """a = T diag(S, N) T^-1 must give a^D = T diag(S^-1, 0) T^-1 exactly."""
    s_dim = rng.randrange(dim + 1)
    n_dim = dim - s_dim
    blocks, inv_blocks = [], []
    if s_dim:
        s = random_invertible(rng, s_dim)
        blocks.append(s)
        inv_blocks.append(inverse(s))
    if n_dim:
        blocks.append(random_matrix(rng, n_dim, style="nilpotent"))
        inv_blocks.append(Matrix.zeros(n_dim))
    t, t_inv = random_unimodular(rng, dim)
    a = t @ block_diag(*blocks) @ t_inv
    expected = t @ block_diag(*inv_blocks) @ t_inv
    return gi.drazin(a).inverse == expected


def run_suite(
    seeds: int,
    dims: list[int],
    generators: dict | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    generators = generators or GENERATORS
    suite = Suite(tol)
    for seed in range(seeds):
        for dim in sorted(dims):
            suite.matrix_properties(seed, dim)
            for family in Family:
                suite.quadruple_properties(family, seed, dim, generators[family])
    return suite.report(seeds, sorted(dims))
