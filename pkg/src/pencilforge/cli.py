"""Command-line entry point: `pencilforge <command> ...`.

Exit codes: 0 when every non-skipped check passes, 1 when a check fails,
2 for usage errors (bad flags, unreadable inputs, unwritable outputs).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from fractions import Fraction

from . import __version__
from .algebra import check_constructibility, generated_algebra_dim
from .checks import ALL_CHECKS, GRID_N, PROBE_THRESHOLD, PROBE_TRIALS, CheckContext, run_check
from .exact import ExactMatrix, char_poly, det, discriminant, matrix_from_dict, matrix_to_dict, principal_submatrix
from .family import (
    DiagnosticParameterWarning,
    FamilyParams,
    PencilPair,
    build_A,
    build_B,
    build_pencil,
    split_at_b0,
)
from .historic import (
    STANDARD_LSS,
    LssParams,
    build_laffey,
    lax_commutator_system,
    lax_rank_certify,
    lss_discriminant_scan,
    quantize_laffey,
)
from .parallel import worker_count
from .quantizer import (
    DEFAULT_B_SAMPLES,
    b_sweep,
    certify_polynomial,
    certify_spectrum,
    default_xy,
    gershgorin,
    quantize,
    random_b_samples,
    random_quantisation_probe,
    sym_poly_compare,
)
from .report import CheckResult, VerificationReport, emit_report

CHECK_ALL_MAX_DEFAULT_N = 6
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an exact rational P/Q, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def rational_list(text: str) -> list:
    return [rational(t) for t in text.split(",") if t.strip()]


def order_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"n must be an integer, got {text!r}") from None
    if n < 4:
        raise argparse.ArgumentTypeError(f"n must be >= 4, got {n}")
    return n


# input helpers

def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_matrix(path) -> ExactMatrix:
    data = _read_json(path)
    try:
        return matrix_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a matrix file: {exc}") from None


def _pencil_from_args(args) -> PencilPair:
    if getattr(args, "infile", None):
        data = _read_json(args.infile)
        try:
            return PencilPair(matrix_from_dict(data["H"]), matrix_from_dict(data["K"]), data.get("provenance", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{args.infile} is not a pencil file: {exc}") from None
    if args.n is None:
        raise UsageError("give either --in FILE or --n N")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DiagnosticParameterWarning)
        return build_pencil(FamilyParams(args.n, args.b))


def _diag_note(args, values):
    if getattr(args, "infile", None) is None and getattr(args, "b", None) == 0:
        values["diagnostic_b0"] = True
    return values


# commands; each returns a list of CheckResult

def cmd_family_build(args):
    p = FamilyParams(args.n, args.b)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DiagnosticParameterWarning)
        pair = build_pencil(p)
    payload = {
        "provenance": {"family": "new", "n": p.n, "b": str(p.b), "diagnostic": p.diagnostic},
        "H": matrix_to_dict(pair.H),
        "K": matrix_to_dict(pair.K),
        "A": matrix_to_dict(build_A(p)),
        "B": matrix_to_dict(build_B(p.n)),
    }
    if args.out:
        try:
            with open(args.out, "w") as fh:
                json.dump(payload, fh)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    ok = pair.H.is_hermitian() and pair.K.is_hermitian()
    return [CheckResult("family_build", "pass" if ok else "fail", _diag_note(args, {
        "n": p.n, "b": p.b, "order": p.order, "q": p.q, "out": args.out or "none",
    }))]


def cmd_family_split(args):
    s = split_at_b0(args.n)
    gap = (det(principal_submatrix(s.H1, (0, 1, 2))) - det(principal_submatrix(s.H2, (0, 1, 2)))).re
    same = char_poly(s.H1) == char_poly(s.H2)
    return [CheckResult("family_split", "pass" if same and gap == -4 * (args.n - 3) else "fail", {
        "n": args.n,
        "q": s.q,
        "permutation": list(s.permutation),
        "H1_diagonal": [z.re for z in s.H1.diagonal()],
        "block_det_gap": gap,
        "char_H1_equals_char_H2": same,
    })]


def cmd_algebra_dim(args):
    P = _pencil_from_args(args)
    rep = generated_algebra_dim([P.H, P.K])
    return [CheckResult("algebra_dim", "pass" if rep.saturated else "fail", _diag_note(args, {
        "dimension": rep.dimension, "full": rep.order ** 2, "saturated": rep.saturated,
        "generations": rep.generations,
    }))]


def cmd_algebra_criteria(args):
    P = _pencil_from_args(args)
    b = None if getattr(args, "infile", None) else args.b
    rep = check_constructibility(P, b)
    return [CheckResult("algebra_criteria", "pass" if rep.passed else "fail", _diag_note(args, {
        "cond1_multiplicity_ok": rep.cond1_multiplicity_ok,
        "cond2_invertible_row": rep.cond2_invertible_row,
        "cond3_noncommuting_pair": list(rep.cond3_noncommuting_pair) if rep.cond3_noncommuting_pair else None,
        "excluded_b_values": list(rep.excluded_b_values),
    }))]


def cmd_quantize(args):
    P = _pencil_from_args(args)
    if (args.X is None) != (args.Y is None):
        raise UsageError("--X and --Y go together")
    if args.X is not None:
        X, Y = _load_matrix(args.X), _load_matrix(args.Y)
    else:
        n = args.n if args.n is not None else P.order // 2
        X, Y = default_xy(n)
    try:
        L = quantize(X, Y, P)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cert = certify_spectrum(L)
    return [CheckResult("quantize", "pass" if cert.simple_count > 0 else "fail", _diag_note(args, {
        "order": L.rows,
        "simple_count": cert.simple_count,
        "distinct_count": cert.distinct_count,
        "all_even": cert.all_even,
        "multiplicities": sorted({m for _, m in cert.decomposition.parts}),
    }))]


def cmd_sweep(args):
    bs = DEFAULT_B_SAMPLES if args.samples is None else random_b_samples(args.samples, args.seed)
    rows = b_sweep(args.n, bs, workers=args.workers)
    out = []
    for k, r in enumerate(rows):
        ok = r.error is None and r.simple_count >= args.min_simple
        values = {"b": r.b, "simple_count": r.simple_count, "all_even_unquantised": r.all_even_unquantised}
        if r.error:
            values["error"] = r.error
        out.append(CheckResult(f"sweep_{k:03d}", "pass" if ok else "fail", values))
    return out


def cmd_gershgorin(args):
    M = _load_matrix(args.infile)
    try:
        rep = gershgorin(M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return [CheckResult("gershgorin", "pass" if rep.all_disjoint else "fail", {
        "order": M.rows,
        "all_disjoint": rep.all_disjoint,
        "min_gap": rep.min_gap,
        "centers": [c for c, _ in rep.discs],
        "radii": [r for _, r in rep.discs],
    })]


def cmd_sympoly(args):
    s = split_at_b0(args.n)
    if not 1 <= args.kmax <= s.L1.rows:
        raise UsageError(f"--kmax must lie in 1..{s.L1.rows}")
    cmp = sym_poly_compare(s.L1, s.L2, args.kmax)
    values = {"n": args.n, "q": s.q}
    for k, e1, e2, d in cmp.e_values:
        values[f"e{k}_gap"] = d
    return [CheckResult("sympoly", "pass", values)]


def cmd_laffey(args):
    L = quantize_laffey()
    p = char_poly(L)
    cert = certify_polynomial(p)
    d = det(L).re
    disc = discriminant(p)
    P = build_laffey()
    system = lax_commutator_system(P.H, P.K)
    certified = lax_rank_certify(system, p)
    ok = disc != 0 and cert.simple_count == L.rows and certified
    return [CheckResult("laffey_verify", "pass" if ok else "fail", {
        "det": d,
        "discriminant": disc,
        "simple_count": cert.simple_count,
        "unknowns": len(system.unknowns),
        "equations": len(system.equations),
        "rank_certified": certified,
    })]


def cmd_lss(args):
    try:
        params = LssParams(args.x, args.y, args.xi, args.eta, args.c, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if any(s <= 1 for s in args.s):
        raise UsageError("every s must exceed 1")
    rows, any_nonzero = lss_discriminant_scan(params, args.s)
    out = []
    for r in rows:
        out.append(CheckResult(f"lss_s_{r.s}".replace("/", "_"), "pass" if r.det_M == r.closed_form else "fail", {
            "s": r.s, "det_M": r.det_M, "closed_form": r.closed_form, "discriminant": r.discriminant,
        }))
    out.append(CheckResult("lss_any_nonzero_discriminant", "pass" if any_nonzero else "fail",
                           {"any_nonzero": any_nonzero}))
    return out


def cmd_probe(args):
    P = _pencil_from_args(args)
    fraction, rows = random_quantisation_probe(P, args.trials, args.seed, workers=args.workers)
    exact = Fraction(sum(1 for r in rows if not r.square), args.trials)
    return [CheckResult("probe", "pass" if exact >= args.threshold else "fail", _diag_note(args, {
        "trials": args.trials, "seed": args.seed, "non_square_fraction": exact, "threshold": args.threshold,
    }))]


def cmd_paper_check(args):
    large = [n for n in args.n if n > CHECK_ALL_MAX_DEFAULT_N]
    if large and not args.allow_large:
        raise UsageError(f"n > {CHECK_ALL_MAX_DEFAULT_N} needs --allow-large")
    if large:
        print(f"warning: paper-check at n={large} may take a long time", file=sys.stderr)
    ctx = CheckContext(ns=tuple(args.n), seed=args.seed, workers=args.workers)
    return [run_check(c, ctx) for c in ALL_CHECKS]


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--report", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (capped by PENCILFORGE_THREADS)")

    def family_args(p, need_n=True):
        p.add_argument("--n", type=order_n, required=need_n)
        p.add_argument("--b", type=rational, default=Fraction(1))

    def pencil_source(p):
        p.add_argument("--in", dest="infile", metavar="FILE", help="pencil file from `family build`")
        family_args(p, need_n=False)

    parser = argparse.ArgumentParser(prog="pencilforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pencilforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="build or split family members").add_subparsers(dest="action", required=True)
    p = fam.add_parser("build", parents=[common])
    family_args(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_family_build)
    p = fam.add_parser("split", parents=[common])
    p.add_argument("--n", type=order_n, required=True)
    p.set_defaults(func=cmd_family_split)

    alg = sub.add_parser("algebra", help="generated algebra checks").add_subparsers(dest="action", required=True)
    p = alg.add_parser("dim", parents=[common])
    pencil_source(p)
    p.set_defaults(func=cmd_algebra_dim)
    p = alg.add_parser("criteria", parents=[common])
    pencil_source(p)
    p.set_defaults(func=cmd_algebra_criteria)

    p = sub.add_parser("quantize", parents=[common], help="certify the spectrum of X (x) H + Y (x) K")
    pencil_source(p)
    p.add_argument("--X", metavar="FILE")
    p.add_argument("--Y", metavar="FILE")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("sweep", parents=[common], help="simple-eigenvalue counts across b")
    p.add_argument("--n", type=order_n, default=4)
    p.add_argument("--samples", type=int, default=None, help="random b values (default: fixed 20-value set)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-simple", type=int, default=6)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gershgorin", parents=[common], help="exact disc disjointness of a hermitian matrix")
    p.add_argument("--in", dest="infile", metavar="FILE", required=True)
    p.set_defaults(func=cmd_gershgorin)

    p = sub.add_parser("sympoly", parents=[common], help="e_k gaps between the b = 0 blocks")
    p.add_argument("--n", type=order_n, required=True)
    p.add_argument("--kmax", type=int, default=4)
    p.set_defaults(func=cmd_sympoly)

    lf = sub.add_parser("laffey", help="Laffey's counterexample").add_subparsers(dest="action", required=True)
    p = lf.add_parser("verify", parents=[common])
    p.set_defaults(func=cmd_laffey)

    ls = sub.add_parser("lss", help="the LSS family").add_subparsers(dest="action", required=True)
    p = ls.add_parser("verify", parents=[common])
    for name in ("x", "y", "xi", "eta", "c", "r"):
        p.add_argument(f"--{name}", type=rational, default=getattr(STANDARD_LSS, name))
    p.add_argument("--s", type=rational_list, default=[Fraction(2), Fraction(3), Fraction(4)],
                   help="comma-separated s values, each > 1")
    p.set_defaults(func=cmd_lss)

    p = sub.add_parser("probe", parents=[common], help="random quantisations breaking squareness")
    pencil_source(p)
    p.add_argument("--trials", type=int, default=PROBE_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=rational, default=PROBE_THRESHOLD)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("paper-check", parents=[common], help="run every acceptance check")
    p.add_argument("--n", type=order_n, nargs="+", default=list(GRID_N))
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_paper_check)
    return parser


def resolved_config(args) -> dict:
    skip = {"func", "report", "threads", "workers"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        if getattr(args, "trials", 1) < 1:
            raise UsageError("--trials must be >= 1")
        if getattr(args, "samples", None) is not None and args.samples < 1:
            raise UsageError("--samples must be >= 1")
        args.workers = worker_count(args.threads)
        results = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"pencilforge: error: {exc}", file=sys.stderr)
        return 2
    report = VerificationReport(resolved_config(args), __version__, results)
    data = emit_report(report, args.format)
    if args.report:
        try:
            with open(args.report, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"pencilforge: error: cannot write {args.report}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
