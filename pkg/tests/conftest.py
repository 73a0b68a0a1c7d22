"""Shared fixtures: sympy bridges and hypothesis strategies for exact matrices."""

from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ginv.generate import DEFAULT_POOL
from ginv.matrix import Matrix
from ginv.scalar import GaussianRational

settings.register_profile(
    "ginv", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ginv")


def to_sympy(m: Matrix) -> sympy.Matrix:
    def conv(x):
        x = GaussianRational.coerce(x)
        return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(
            x.im.numerator, x.im.denominator
        )

    return sympy.Matrix([[conv(x) for x in row] for row in m.rows])


def from_sympy(s: sympy.Matrix) -> Matrix:
    def conv(v):
        re, im = sympy.nsimplify(v).as_real_imag()
        return GaussianRational(Fraction(str(re)), Fraction(str(im)))

    return Matrix.from_rows([[conv(s[i, j]) for j in range(s.cols)] for i in range(s.rows)])


def sympy_drazin(m: Matrix) -> Matrix:
    """Independent oracle: a^D = a^k (a^(2k+1))^+ a^k with k = n."""
    s = to_sympy(m)
    k = s.rows
    ak = s**k
    return from_sympy(sympy.simplify(ak * (s ** (2 * k + 1)).pinv() * ak))


entries = st.sampled_from(DEFAULT_POOL)


@st.composite
def exact_matrices(draw, min_dim=1, max_dim=4, complex_entries=False):
    n = draw(st.integers(min_dim, max_dim))
    density = draw(st.sampled_from([0.3, 0.6, 1.0]))
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            if draw(st.floats(0, 1)) > density:
                row.append(GaussianRational(0))
                continue
            im = draw(entries) if complex_entries else 0
            row.append(GaussianRational(draw(entries), im))
        rows.append(row)
    return Matrix.from_rows(rows)


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def acceptance_line(number, ok: bool, text: str) -> str:
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {text}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
