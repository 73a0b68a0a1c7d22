"""JSON wire formats for matrices and quadruples.

Matrix::

    {"n": 2, "backend": "exact", "entries": [[{"re": "1/2", "im": "0"}, ...], ...]}

Exact entries are strings ``"p/q"`` or ``"p"``; f64 entries are numbers.
Parsing is strict: a matrix whose entries disagree with its declared backend
is rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .matrix import Matrix
from .scalar import BACKENDS, EXACT, F64, GaussianRational


def _fraction_str(x: Fraction) -> str:
    return str(x)


def matrix_to_json(m: Matrix) -> dict:
    rows, cols = m.shape
    if rows != cols:
        raise ValueError("only square matrices are serialized")
    if m.exact:
        entries = [[{"re": _fraction_str(x.re), "im": _fraction_str(x.im)} for x in r] for r in m.rows]
    else:
        entries = [[{"re": x.real, "im": x.imag} for x in r] for r in m.rows]
    return {"n": rows, "backend": m.backend, "entries": entries}


def _parse_exact(v, where: str) -> Fraction:
    if not isinstance(v, str):
        raise ParseError(f"{where}: exact entries must be strings, got {type(v).__name__}")
    try:
        return Fraction(v.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational {v!r}") from exc


def _parse_float(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: f64 entries must be numbers, got {type(v).__name__}")
    return float(v)


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object")
    for key in ("n", "backend", "entries"):
        if key not in obj:
            raise ParseError(f"matrix missing key {key!r}")
    n, backend, entries = obj["n"], obj["backend"], obj["entries"]
    if backend not in BACKENDS:
        raise ParseError(f"unknown backend {backend!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"n must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseError(f"entries must be a list of {n} rows")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must have {n} entries")
        out = []
        for j, e in enumerate(row):
            where = f"entries[{i}][{j}]"
            if not isinstance(e, dict) or set(e) - {"re", "im"} or "re" not in e:
                raise ParseError(f"{where}: expected {{'re': ..., 'im': ...}}")
            if backend == EXACT:
                re = _parse_exact(e["re"], where)
                im = _parse_exact(e.get("im", "0"), where)
                out.append(GaussianRational(re, im))
            else:
                re = _parse_float(e["re"], where)
                im = _parse_float(e.get("im", 0.0), where)
                out.append(complex(re, im))
        rows.append(tuple(out))
    return Matrix(tuple(rows), backend)


def loads(text: str):
    """json.loads with a line/column diagnostic on failure."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def complex_to_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


__all__ = ["matrix_to_json", "matrix_from_json", "loads", "dumps", "complex_to_json", "EXACT", "F64"]
