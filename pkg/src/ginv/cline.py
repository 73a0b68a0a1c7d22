"""Hypothesis families on quadruples (a, b, c, d) and the transfer formulas.

The central identity carries the Drazin inverse of ``ac`` over to ``bd``::

    (bd)^D = b ((ac)^D)^2 d

whenever the four-equation family holds.  In M_n(C) the generalized
(quasinilpotent) and ordinary Drazin inverses coincide, so one code path
serves both; :func:`transfer_drazin_with_bound` only adds the index bound.

Under the two-equation family alone, ``b h^2 d`` (h = (ac)^D) is not the
Drazin inverse of ``bd`` in general.  Squaring the quadruple to
(aca, b, c, dbd) restores the four equations, and unwinding gives::

    (bd)^D = (bd)^2^D bd = b h^4 (db)^2 d = b h^3 (db) d

which agrees with ``b h^2 d`` whenever all four equations hold.
:func:`transfer_gdrazin` uses the squared form exactly when the four-equation
family fails; :func:`printed_transfer` always returns ``b h^2 d``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .drazin import (
    ConditionResult,
    DrazinResult,
    HypothesisReport,
    compare,
    drazin,
    index,
    is_nilpotent,
    verify_drazin_axioms,
)
from .errors import (
    BackendMismatch,
    DimensionMismatch,
    HypothesisViolated,
    NoGroupInverse,
    ParseError,
    SingularAC,
    Singular,
    TransferMismatch,
)
from .matrix import Matrix, inverse
from .scalar import DEFAULT_TOL, Tolerance


class Family(str, Enum):
    CLASSICAL = "classical"
    RING_FOUR = "ring-four"
    BANACH_WEAK = "banach-weak"
    LIAN_ZENG = "lian-zeng"
    MILLER_ZGUITTI = "miller-zguitti"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClineQuadruple:
    a: Matrix
    b: Matrix
    c: Matrix
    d: Matrix
    family: Family

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        mats = (self.a, self.b, self.c, self.d)
        n = self.a.n
        if any(m.n != n for m in mats):
            raise DimensionMismatch("a, b, c, d must share one dimension")
        if len({m.backend for m in mats}) != 1:
            raise BackendMismatch("a, b, c, d must share one backend")

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def backend(self) -> str:
        return self.a.backend

    def to_backend(self, backend: str) -> ClineQuadruple:
        return replace(
            self,
            a=self.a.to_backend(backend),
            b=self.b.to_backend(backend),
            c=self.c.to_backend(backend),
            d=self.d.to_backend(backend),
        )

    def with_family(self, family: Family) -> ClineQuadruple:
        return replace(self, family=Family(family))

    def swapped(self) -> ClineQuadruple:
        """(d, c, b, a): exchanges the roles of ac and db in every family equation."""
        return ClineQuadruple(self.d, self.c, self.b, self.a, self.family)

    def identity_like(self) -> Matrix:
        return Matrix.identity(self.n, self.backend)

    def to_json(self) -> dict:
        from .serialize import matrix_to_json

        return {
            "family": self.family.value,
            "a": matrix_to_json(self.a),
            "b": matrix_to_json(self.b),
            "c": matrix_to_json(self.c),
            "d": matrix_to_json(self.d),
        }

    @classmethod
    def from_json(cls, obj) -> ClineQuadruple:
        from .serialize import matrix_from_json

        if not isinstance(obj, dict):
            raise ParseError("quadruple must be a JSON object")
        try:
            family = Family(obj.get("family"))
        except ValueError as exc:
            raise ParseError(f"unknown family {obj.get('family')!r}") from exc
        for key in ("a", "b", "c"):
            if key not in obj:
                raise ParseError(f"quadruple missing {key!r}")
        a, b, c = (matrix_from_json(obj[k]) for k in ("a", "b", "c"))
        if "d" in obj:
            d = matrix_from_json(obj["d"])
        elif family in (Family.LIAN_ZENG, Family.CLASSICAL):
            d = a
        else:
            raise ParseError(f"family {family.value} requires 'd'")
        try:
            return cls(a, b, c, d, family)
        except (DimensionMismatch, BackendMismatch) as exc:
            raise ParseError(str(exc)) from exc


# -- hypothesis checks --------------------------------------------------------


class _Products:
    """Lazily cached words in a, b, c, d."""

    def __init__(self, q: ClineQuadruple):
        self.q = q
        self._cache: dict[str, Matrix] = {}

    def __getitem__(self, word: str) -> Matrix:
        if word not in self._cache:
            if len(word) == 1:
                self._cache[word] = getattr(self.q, word)
            else:
                self._cache[word] = self[word[:-1]] @ self[word[-1]]
        return self._cache[word]


_EQUATIONS = {
    Family.CLASSICAL: [("c = b", "c", "b"), ("d = a", "d", "a")],
    Family.RING_FOUR: [
        ("(ac)^2 = (db)(ac)", "acac", "dbac"),
        ("(db)^2 = (ac)(db)", "dbdb", "acdb"),
        ("b(ac)a = b(db)a", "baca", "bdba"),
        ("c(ac)d = c(db)d", "cacd", "cdbd"),
    ],
    Family.BANACH_WEAK: [
        ("(ac)^2 = (db)(ac)", "acac", "dbac"),
        ("(db)^2 = (ac)(db)", "dbdb", "acdb"),
    ],
    Family.LIAN_ZENG: [
        ("d = a", "d", "a"),
        ("(aba)b = (aca)b", "abab", "acab"),
        ("b(aba) = b(aca)", "baba", "baca"),
        ("(aba)c = (aca)c", "abac", "acac"),
        ("c(aba) = c(aca)", "caba", "caca"),
    ],
    Family.MILLER_ZGUITTI: [("acd = dbd", "acd", "dbd"), ("dba = aca", "dba", "aca")],
}


def check_family(
    q: ClineQuadruple, family: Family, tol: Tolerance = DEFAULT_TOL, products: _Products | None = None
) -> HypothesisReport:
    """Residuals of every equation of ``family`` (ignores ``q.family``)."""
    p = products or _Products(q)
    return HypothesisReport(
        tuple(compare(name, p[lhs], p[rhs], tol) for name, lhs, rhs in _EQUATIONS[Family(family)])
    )


def check_conditions(q: ClineQuadruple, tol: Tolerance = DEFAULT_TOL) -> HypothesisReport:
    """Check ``q.family``; ``extra["families"]`` records which of all five families hold."""
    p = _Products(q)
    own = check_family(q, q.family, tol, p)
    holds = {f.value: (own.overall if f == q.family else check_family(q, f, tol, p).overall) for f in Family}
    return HypothesisReport(own.conditions, {"family": q.family.value, "families": holds})


def _require(q: ClineQuadruple, tol: Tolerance) -> HypothesisReport:
    report = check_family(q, q.family, tol)
    if not report.overall:
        failed = [c.name for c in report.conditions if not c.holds]
        raise HypothesisViolated(f"{q.family.value} conditions fail: {', '.join(failed)}")
    return report


def satisfies(q: ClineQuadruple, family: Family, tol: Tolerance = DEFAULT_TOL) -> bool:
    return check_family(q, family, tol).overall


# -- transfers ------------------------------------------------------------------


def printed_transfer(q: ClineQuadruple, h: Matrix) -> Matrix:
    """b h^2 d, the formula exactly as stated for every family."""
    return q.b @ h @ h @ q.d


def squared_transfer(q: ClineQuadruple, h: Matrix) -> Matrix:
    """b h^3 (db) d; valid under the two product equations alone."""
    return q.b @ h @ h @ h @ q.d @ q.b @ q.d


def _check_acd(q: ClineQuadruple, acd: DrazinResult, tol: Tolerance):
    ac = q.a @ q.c
    if not ac.exact:
        # residuals of x a x scale like |a| |x|^2
        size = max(1.0, ac.max_abs()) * max(1.0, acd.inverse.max_abs()) ** 2
        tol = Tolerance(eq_tol=tol.eq_tol * size, rank_tol=tol.rank_tol)
    report = verify_drazin_axioms(ac, acd.inverse, acd.index, tol, comm2_max_dim=0)
    if not report.overall:
        raise TransferMismatch("supplied DrazinResult is not the Drazin inverse of ac")


def transfer_gdrazin(
    q: ClineQuadruple, acd: DrazinResult | None = None, tol: Tolerance = DEFAULT_TOL
) -> DrazinResult:
    """Drazin inverse of bd obtained from that of ac.

    Uses b h^2 d when the four-equation family holds (every family except
    two-equation-only quadruples), b h^3 (db) d otherwise.
    """
    _require(q, tol)
    if acd is None:
        acd = drazin(q.a @ q.c, tol)
    else:
        _check_acd(q, acd, tol)
    h = acd.inverse
    if q.family != Family.BANACH_WEAK or satisfies(q, Family.RING_FOUR, tol):
        e = printed_transfer(q, h)
    else:
        e = squared_transfer(q, h)
    bd = q.b @ q.d
    return DrazinResult.build(bd, e, index(bd, tol))


def transfer_drazin_with_bound(
    q: ClineQuadruple, acd: DrazinResult | None = None, tol: Tolerance = DEFAULT_TOL
) -> tuple[DrazinResult, bool]:
    """Same inverse as :func:`transfer_gdrazin` plus i(bd) <= i(ac) + slack.

    slack is 1 for the Lian-Zeng family (bd = ba there) and 2 otherwise.
    """
    if acd is None:
        acd = drazin(q.a @ q.c, tol)
    res = transfer_gdrazin(q, acd, tol)
    slack = 1 if q.family == Family.LIAN_ZENG else 2
    return res, res.index <= acd.index + slack


def lian_zeng_candidates(q: ClineQuadruple, tol: Tolerance = DEFAULT_TOL) -> dict[str, HypothesisReport]:
    """Axiom reports for both readings of the d = a transfer formula.

    ``b((ac)^D)^2 a`` follows from specializing d = a; ``b((ab)^D)^2 a`` is
    the classical Cline formula, which holds for every pair.
    """
    ba = q.b @ q.a
    k = index(ba, tol)
    h_ac = drazin(q.a @ q.c, tol).inverse
    h_ab = drazin(q.a @ q.b, tol).inverse
    return {
        "b((ac)^D)^2a": verify_drazin_axioms(ba, q.b @ h_ac @ h_ac @ q.a, k, tol, comm2_max_dim=0),
        "b((ab)^D)^2a": verify_drazin_axioms(ba, q.b @ h_ab @ h_ab @ q.a, k, tol, comm2_max_dim=0),
    }


def transfer_group(q: ClineQuadruple, acg=None, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    """(ac)^# recovered as a [(ba)^2]^# c with [(ba)^2]^# = ((ba)^D)^2."""
    if q.family != Family.LIAN_ZENG:
        raise HypothesisViolated("group transfer needs the lian-zeng family")
    _require(q, tol)
    ac = q.a @ q.c
    ac_res = drazin(ac, tol)
    if ac_res.index > 1:
        raise NoGroupInverse(f"index(ac) = {ac_res.index} >= 2")
    target = ac_res.inverse if acg is None else acg.inverse
    ba = q.b @ q.a
    x = drazin(ba, tol).inverse
    sq = ba @ ba
    g = x @ x
    if index(sq, tol) > 1:
        raise TransferMismatch("(ba)^2 is not group invertible")
    group_check = verify_drazin_axioms(sq, g, 1, tol, comm2_max_dim=0)
    if not group_check.overall:
        raise TransferMismatch("((ba)^D)^2 is not the group inverse of (ba)^2")
    out = q.a @ g @ q.c
    if not out.equals(target, tol):
        raise TransferMismatch("a[(ba)^2]^# c differs from (ac)^#")
    return out


def reverse_transfer(q: ClineQuadruple, bd_inverse: Matrix, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    """(ac)^D from (bd)^D: Cline to db, the engine on (d, c, b, a) to ca, Cline to ac."""
    _require(q, tol)
    db_inv = q.d @ bd_inverse @ bd_inverse @ q.b
    sq = q.swapped()
    db_res = DrazinResult.build(sq.a @ sq.c, db_inv, index(sq.a @ sq.c, tol))
    ca_inv = transfer_gdrazin(sq, db_res, tol).inverse
    return q.a @ ca_inv @ ca_inv @ q.c


def qnil_transfer_check(q: ClineQuadruple, tol: Tolerance = DEFAULT_TOL) -> bool:
    """(ac nilpotent) == (bd nilpotent)."""
    _require(q, tol)
    if not q.a.exact:
        raise BackendMismatch("nilpotency transfer is checked in exact mode")
    return is_nilpotent(q.a @ q.c) == is_nilpotent(q.b @ q.d)


def jacobson_inverse(q: ClineQuadruple, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    """(I - bd)^-1 = [I - b s (acd - dbd)] [I + b s d] with s = (I - ac)^-1.

    Requires the four-equation family regardless of ``q.family``.
    """
    report = check_family(q, Family.RING_FOUR, tol)
    if not report.overall:
        raise HypothesisViolated("Jacobson-type inverse needs the ring-four equations")
    eye = q.identity_like()
    a, b, c, d = q.a, q.b, q.c, q.d
    try:
        s = inverse(eye - a @ c, tol)
    except Singular as exc:
        raise SingularAC("I - ac is singular") from exc
    x = (eye - b @ s @ (a @ c @ d - d @ b @ d)) @ (eye + b @ s @ d)
    m = eye - b @ d
    check = tol
    if not m.exact:
        # rounding in x m grows with |x| |m|
        check = Tolerance(eq_tol=tol.eq_tol * max(1.0, x.max_abs() * m.max_abs()), rank_tol=tol.rank_tol)
    if not ((x @ m).equals(eye, check) and (m @ x).equals(eye, check)):
        raise TransferMismatch("formula output is not a two-sided inverse of I - bd")
    return x


def pdrazin_collapse_check(q: ClineQuadruple, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Does b((ac)^D)^2 d, taken verbatim, pass the Drazin axioms for bd?

    In M_n(C) the Jacobson radical is zero, so the p-Drazin inverse is the
    Drazin inverse and the p-Drazin transfer reduces to this check.
    """
    if q.family != Family.BANACH_WEAK:
        raise HypothesisViolated("p-Drazin collapse is stated for the banach-weak family")
    _require(q, tol)
    h = drazin(q.a @ q.c, tol).inverse
    bd = q.b @ q.d
    return verify_drazin_axioms(bd, printed_transfer(q, h), index(bd, tol), tol).overall


__all__ = [
    "ClineQuadruple",
    "ConditionResult",
    "Family",
    "HypothesisReport",
    "check_conditions",
    "check_family",
    "jacobson_inverse",
    "lian_zeng_candidates",
    "pdrazin_collapse_check",
    "printed_transfer",
    "qnil_transfer_check",
    "reverse_transfer",
    "satisfies",
    "squared_transfer",
    "transfer_drazin_with_bound",
    "transfer_gdrazin",
    "transfer_group",
]
