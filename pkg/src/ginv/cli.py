"""``ginv``: Drazin inverses and quadruple transfers over JSON files.

Exit codes: 0 success, 1 computed but the verdict is false, 2 usage or
input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from . import cline, spectral
from .cline import ClineQuadruple, Family
from .drazin import drazin, group, rank_chain, verify_drazin_axioms
from .errors import (
    BackendMismatch,
    DimensionMismatch,
    DimensionTooLarge,
    GenerationFailed,
    GinvError,
    HypothesisViolated,
    NoGroupInverse,
    ParseError,
    SingularAC,
)
from .generate import GENERATORS, GenSpec, example_3_7
from .matrix import Matrix, is_invertible
from .scalar import BACKENDS, EXACT, F64, Tolerance
from .serialize import complex_to_json, dumps, loads, matrix_from_json, matrix_to_json

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

# verbs whose default backend is fixed; the rest keep the input's backend
DEFAULT_BACKEND = {"check": EXACT, "transfer": EXACT, "jacobson": EXACT, "demo": EXACT, "suite": EXACT, "spectrum": F64}


class UsageError(GinvError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ginv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="JSON file, or - for stdin")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--backend", choices=BACKENDS)
        p.add_argument("--tol", type=float, default=1e-10, help="equality tolerance (float mode)")
        p.add_argument("--rank-tol", type=float, default=1e-9, help="relative pivot threshold (float mode)")
        return p

    common(sub.add_parser("drazin", help="Drazin inverse and index of a matrix"))
    common(sub.add_parser("group", help="group inverse; verdict false when the index exceeds 1"))
    common(sub.add_parser("index", help="Drazin index and rank chain"))
    p = common(sub.add_parser("check", help="check the hypothesis equations of a quadruple"))
    p.add_argument("--family", choices=[f.value for f in Family], help="check this family instead of the file's")
    common(sub.add_parser("transfer", help="(bd)^D from (ac)^D"))
    common(sub.add_parser("jacobson", help="explicit inverse of I - bd"))
    p = common(sub.add_parser("spectrum", help="eigenvalues of a matrix, or the spectral report of a quadruple"))
    p.add_argument("--seed", type=int, default=0, help="seed for the lambda samples")
    p = common(sub.add_parser("gen", help="generate a conditioned quadruple"), needs_input=False)
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p = common(sub.add_parser("demo", help="worked examples"), needs_input=False)
    p.add_argument("name", choices=["example-3-7"])
    p = common(sub.add_parser("suite", help="run the property suite"), needs_input=False)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--dims", default="2,3,4", help="comma-separated dimensions")
    return parser


# -- input helpers --------------------------------------------------------------


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text)


def _backend(args) -> str | None:
    return args.backend or DEFAULT_BACKEND.get(args.verb)


def _tolerance(args) -> Tolerance:
    try:
        return Tolerance(eq_tol=args.tol, rank_tol=args.rank_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_matrix(args) -> Matrix:
    m = matrix_from_json(_read_json(args.input))
    backend = _backend(args)
    return m.to_backend(backend) if backend else m


def _load_quadruple(args) -> ClineQuadruple:
    q = ClineQuadruple.from_json(_read_json(args.input))
    backend = _backend(args)
    return q.to_backend(backend) if backend else q


# -- verbs ----------------------------------------------------------------------


def cmd_drazin(args, tol):
    a = _load_matrix(args)
    res = drazin(a, tol)
    report = verify_drazin_axioms(a, res.inverse, res.index, tol)
    out = {"inverse": matrix_to_json(res.inverse), "index": res.index, "verification": report.to_json()}
    return (EXIT_OK if report.overall else EXIT_NUMERIC), out


def cmd_group(args, tol):
    a = _load_matrix(args)
    try:
        g = group(a, tol)
    except NoGroupInverse as exc:
        return EXIT_FALSE, {"exists": False, "reason": str(exc)}
    return EXIT_OK, {"exists": True, "inverse": matrix_to_json(g.inverse)}


def cmd_index(args, tol):
    a = _load_matrix(args)
    chain = rank_chain(a, tol)
    return EXIT_OK, {"index": len(chain) - 2, "rank_chain": chain}


def cmd_check(args, tol):
    q = _load_quadruple(args)
    if args.family:
        q = q.with_family(Family(args.family))
    report = cline.check_conditions(q, tol)
    return (EXIT_OK if report.overall else EXIT_FALSE), report.to_json()


def cmd_transfer(args, tol):
    q = _load_quadruple(args)
    report = cline.check_conditions(q, tol)
    if not report.overall:
        return EXIT_FALSE, {"conditions": report.to_json(), "transfer": None}
    acd = drazin(q.a @ q.c, tol)
    bd_res, bound = cline.transfer_drazin_with_bound(q, acd, tol)
    bd = q.b @ q.d
    ring_four = report.extra["families"][Family.RING_FOUR.value]
    verification = verify_drazin_axioms(bd, bd_res.inverse, bd_res.index, tol)
    printed = cline.printed_transfer(q, acd.inverse)
    out = {
        "conditions": report.to_json(),
        "ac": acd.to_json(),
        "bd": bd_res.to_json(),
        "formula": "b h^2 d" if ring_four else "b h^3 (db) d",
        "printed_formula_passes": verify_drazin_axioms(bd, printed, bd_res.index, tol).overall,
        "index_bound_holds": bound,
        "verification": verification.to_json(),
    }
    return (EXIT_OK if verification.overall else EXIT_NUMERIC), out


def cmd_jacobson(args, tol):
    q = _load_quadruple(args)
    eye = q.identity_like()
    left = is_invertible(eye - q.a @ q.c, tol)
    right = is_invertible(eye - q.b @ q.d, tol)
    out = {"i_minus_ac_invertible": left, "i_minus_bd_invertible": right}
    try:
        x = cline.jacobson_inverse(q, tol)
    except (SingularAC, HypothesisViolated) as exc:
        out.update(inverse=None, reason=str(exc))
        return EXIT_FALSE, out
    out["inverse"] = matrix_to_json(x)
    return EXIT_OK, out


def cmd_spectrum(args, tol):
    obj = _read_json(args.input)
    backend = _backend(args)
    if isinstance(obj, dict) and "entries" in obj:
        a = matrix_from_json(obj).to_backend(backend)
        values = spectral.spectrum(a, tol).values
        note = spectral.sigma_d_report(a)
        return EXIT_OK, {
            "eigenvalues": [complex_to_json(v) for v in values],
            "sigma_d": [],
            "note": note.note,
        }
    q_in = ClineQuadruple.from_json(obj)
    q = q_in.to_backend(backend)
    report = cline.check_conditions(q, tol)
    if not report.overall:
        return EXIT_FALSE, {"conditions": report.to_json()}
    lambdas = spectral.lambda_samples(q, 20, tol, seed=args.seed)
    out = spectral.spectral_report(q, lambdas, tol)
    if q_in.a.exact and not args.backend:
        # float lambdas are dyadic rationals, so exact input gets exact invertibility decisions
        out["lambda_checks"] = spectral.spectral_report(q_in, lambdas, tol)["lambda_checks"]
    ok = out["nonzero_spectrum_equal"] and all(c["transfer_holds"] for c in out["lambda_checks"])
    return (EXIT_OK if ok else EXIT_FALSE), out


def cmd_gen(args, tol):
    if args.dim < 1:
        raise UsageError("--dim must be >= 1")
    family = Family(args.family)
    q = GENERATORS[family](GenSpec(family, args.dim, args.seed))
    if args.backend:
        q = q.to_backend(args.backend)
    return EXIT_OK, q.to_json()


def demo_example_3_7(tol: Tolerance, backend: str = EXACT) -> dict:
    q = example_3_7().to_backend(backend)
    report = cline.check_conditions(q, tol)
    ac, bd = q.a @ q.c, q.b @ q.d
    acd, dbd = ac @ q.d, q.d @ q.b @ q.d
    h = drazin(ac, tol)
    transferred = cline.transfer_gdrazin(q, h, tol)
    direct = drazin(bd, tol)
    return {
        "quadruple": q.to_json(),
        "conditions": report.to_json(),
        "acd_equals_dbd": acd.equals(dbd, tol),
        "ac_index": h.index,
        "bd_index": direct.index,
        "bd_inverse_transfer": matrix_to_json(transferred.inverse),
        "bd_inverse_direct": matrix_to_json(direct.inverse),
        "transfer_matches_direct": transferred.inverse.equals(direct.inverse, tol),
        "pdrazin_collapse": cline.pdrazin_collapse_check(q, tol),
    }


def cmd_demo(args, tol):
    out = demo_example_3_7(tol, _backend(args))
    ok = out["conditions"]["overall"] and out["transfer_matches_direct"] and not out["acd_equals_dbd"]
    return (EXIT_OK if ok else EXIT_FALSE), out


def cmd_suite(args, tol):
    from .suite import run_suite

    try:
        dims = sorted({int(x) for x in args.dims.split(",") if x.strip()})
    except ValueError as exc:
        raise UsageError(f"bad --dims {args.dims!r}") from exc
    if args.seeds < 1 or not dims or min(dims) < 1:
        raise UsageError("--seeds and every entry of --dims must be positive")
    report = run_suite(args.seeds, dims, tol=tol)
    return (EXIT_OK if report["total_failures"] == 0 else EXIT_FALSE), report


COMMANDS = {
    "drazin": cmd_drazin,
    "group": cmd_group,
    "index": cmd_index,
    "check": cmd_check,
    "transfer": cmd_transfer,
    "jacobson": cmd_jacobson,
    "spectrum": cmd_spectrum,
    "gen": cmd_gen,
    "demo": cmd_demo,
    "suite": cmd_suite,
}


def _emit(obj, out_path: str | None):
    text = dumps(obj) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        tol = _tolerance(args)
        code, out = COMMANDS[args.verb](args, tol)
    except (UsageError, ParseError, DimensionMismatch, BackendMismatch, DimensionTooLarge) as exc:
        print(f"ginv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationFailed as exc:
        print(f"ginv: generation failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except GinvError as exc:
        print(f"ginv: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    try:
        _emit(out, args.out)
    except OSError as exc:
        print(f"ginv: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
