"""The 2x2 banach-weak quadruple on which b ((ac)^D)^2 d is not (bd)^D.

a = d = I, c = e11, b = e11 - e12.  The weak equations hold but ring-four
does not; b h^3 (db) d still gives the Drazin inverse of bd.
"""

from ginv import cline
from ginv.cline import ClineQuadruple, Family
from ginv.drazin import drazin, verify_drazin_axioms
from ginv.matrix import Matrix


def fmt(m: Matrix) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.rows) + "]"


def main():
    eye = Matrix.identity(2)
    c = Matrix.from_rows([[1, 0], [0, 0]])
    b = Matrix.from_rows([[1, -1], [0, 0]])
    q = ClineQuadruple(eye, b, c, eye, Family.BANACH_WEAK)
    print("banach-weak holds:", cline.check_family(q, Family.BANACH_WEAK).overall)
    print("ring-four holds:  ", cline.check_family(q, Family.RING_FOUR).overall)
    h = drazin(q.a @ q.c)
    bd = q.b @ q.d
    k = drazin(bd).index
    printed = cline.printed_transfer(q, h.inverse)
    print("b h^2 d       :", fmt(printed), "axioms:", verify_drazin_axioms(bd, printed, k).overall)
    fixed = cline.transfer_gdrazin(q, h)
    print("b h^3 (db) d  :", fmt(fixed.inverse), "axioms:", verify_drazin_axioms(bd, fixed.inverse, k).overall)
    print("(bd)^D direct :", fmt(drazin(bd).inverse))


if __name__ == "__main__":
    main()
