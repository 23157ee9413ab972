"""The twelve acceptance checks, shared by `paper-check` and the test suite.

Each check takes a CheckContext and returns a CheckResult.  Checks that certify
spectra register the matrices they touched, so the float cross-check can run
over exactly the same set afterwards.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import check_constructibility, generated_algebra_dim
from .exact import char_poly, det, discriminant, gcd_poly, poly_sqrt, principal_submatrix
from .family import (
    DiagnosticParameterWarning,
    FamilyParams,
    build_pencil,
    expected_K,
    quantised_b0,
    split_at_b0,
)
from .historic import (
    STANDARD_LSS,
    build_laffey,
    lax_commutator_system,
    lax_rank_certify,
    lss_discriminant_scan,
    lss_quantized_M,
    quantize_laffey,
)
from .oracle import REL_TOL, float_eigenvalues, float_multiplicity_table
from .parallel import pmap
from .quantizer import (
    DEFAULT_B_SAMPLES,
    b_sweep,
    certify_polynomial,
    certify_spectrum,
    default_xy,
    gershgorin,
    quantize,
    random_quantisation_probe,
    sym_poly_compare,
)
from .report import CheckResult

GRID_N = (4, 5, 6)
GRID_B = tuple(Fraction(s) for s in ("1", "-1", "1/3", "7/5", "22/7"))
GRID_XY = ((1, 0), (0, 1), (1, 1), (2, -3))
SPLIT_N = (4, 5, 6, 7, 8)
SWEEP_N = 4
PROBE_TRIALS = 50
PROBE_THRESHOLD = Fraction(9, 10)


@dataclass
class CheckContext:
    ns: tuple = GRID_N
    seed: int = 0
    workers: int = 1
    registry: dict = field(default_factory=dict)  # label -> (matrix, exact multiplicity table)

    def record(self, label: str, M, table) -> None:
        self.registry.setdefault(label, (M, list(table)))


def _pencil(n, b):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DiagnosticParameterWarning)
        return build_pencil(FamilyParams(n, b))


def _label(*parts) -> str:
    return ":".join(str(p) for p in parts)


def _result(name, ok, values) -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", values)


def criterion(name):
    def mark(fn):
        fn.check_name = name
        return fn
    return mark


# 1

def _squareness_cell(n, b):
    P = _pencil(n, b)
    out = []
    for x, y in GRID_XY:
        M = P.at(x, y)
        p = char_poly(M)
        out.append(((x, y), M, poly_sqrt(p) is not None, certify_polynomial(p).multiplicity_table()))
    return out


@criterion("c01_family_squareness")
def family_squareness(ctx: CheckContext) -> CheckResult:
    cells = [(n, b) for n in ctx.ns for b in GRID_B]
    bad = []
    total = 0
    for (n, b), rows in zip(cells, pmap(_squareness_cell, cells, ctx.workers)):
        for xy, M, square, table in rows:
            total += 1
            label = _label("family", n, b, *xy)
            ctx.record(label, M, table)
            if not square:
                bad.append(label)
    return _result("c01_family_squareness", not bad,
                   {"ns": list(ctx.ns), "matrices": total, "non_square": bad})


# 2

def _algebra_cell(n, b):
    P = _pencil(n, b)
    rep = generated_algebra_dim([P.H, P.K])
    crit = check_constructibility(P, b)
    tables = (certify_spectrum(P.H).multiplicity_table(), certify_spectrum(P.K).multiplicity_table())
    return P, rep.dimension, crit, tables


@criterion("c02_full_algebra")
def full_algebra(ctx: CheckContext) -> CheckResult:
    cells = [(n, b) for n in ctx.ns for b in GRID_B]
    failures = []
    dims = {}
    for (n, b), (P, dim, crit, (th, tk)) in zip(cells, pmap(_algebra_cell, cells, ctx.workers)):
        ctx.record(_label("H", n, b), P.H, th)
        ctx.record(_label("K", n, b), P.K, tk)
        dims[n] = dims.get(n, set()) | {dim}
        if dim != (2 * n) ** 2:
            failures.append(_label("dim", n, b, dim))
        if not crit.passed:
            failures.append(_label("criteria", n, b))
    values = {f"dimension_n{n}": sorted(d) for n, d in sorted(dims.items())}
    values["failures"] = failures
    return _result("c02_full_algebra", not failures, values)


# 3

@criterion("c03_k_closed_form")
def k_closed_form(ctx: CheckContext) -> CheckResult:
    bad = []
    for n in SPLIT_N:
        K = _pencil(n, 1).K
        ctx.record(_label("K", n, 1), K, certify_spectrum(K).multiplicity_table())
        if K != expected_K(n):
            bad.append(n)
    return _result("c03_k_closed_form", not bad, {"ns": list(SPLIT_N), "mismatch_n": bad})


# 4

@criterion("c04_block_determinant_gap")
def block_determinant_gap(ctx: CheckContext) -> CheckResult:
    gaps = []
    ok = True
    for n in SPLIT_N:
        s = split_at_b0(n)
        g = det(principal_submatrix(s.H1, (0, 1, 2))) - det(principal_submatrix(s.H2, (0, 1, 2)))
        gaps.append(g.re)
        ok = ok and g == -4 * (n - 3)
    return _result("c04_block_determinant_gap", ok, {"ns": list(SPLIT_N), "gaps": gaps})


# 5

@criterion("c05_similarity")
def similarity(ctx: CheckContext) -> CheckResult:
    problems = []
    for n in SPLIT_N:
        s = split_at_b0(n)
        p1, p2 = char_poly(s.H1), char_poly(s.H2)
        if p1 != p2:
            problems.append(_label("char_differs", n))
        if gcd_poly(p1, p1.derivative()).degree > 0:
            problems.append(_label("not_squarefree", n))
        for name in ("H1", "H2", "L1", "L2"):
            M = getattr(s, name)
            ctx.record(_label(name, n), M, certify_spectrum(M).multiplicity_table())
            if not gershgorin(M).all_disjoint:
                problems.append(_label("discs_overlap", name, n))
    return _result("c05_similarity", not problems, {"ns": list(SPLIT_N), "problems": problems})


# 6

@criterion("c06_symmetric_ladder")
def symmetric_ladder(ctx: CheckContext) -> CheckResult:
    problems = []
    values = {}
    for n in SPLIT_N:
        s = split_at_b0(n)
        cmp = sym_poly_compare(s.L1, s.L2, 4)  # raises if the two paths disagree
        gaps = [cmp.difference(k) for k in (1, 2, 3, 4)]
        values[f"e_gaps_n{n}"] = gaps
        if gaps[:3] != [0, 0, 0] or gaps[3] != Fraction(-32) / s.q ** 4:
            problems.append(n)
    values["mismatch_n"] = problems
    return _result("c06_symmetric_ladder", not problems, values)


# 7

def _b0_cell(n):
    L = quantised_b0(n)
    return L, certify_spectrum(L)


@criterion("c07_splitting_b0")
def splitting_b0(ctx: CheckContext) -> CheckResult:
    counts = []
    for n, (L, cert) in zip(ctx.ns, pmap(_b0_cell, [(n,) for n in ctx.ns], ctx.workers)):
        ctx.record(_label("L_b0", n), L, cert.multiplicity_table())
        counts.append(cert.simple_count)
    return _result("c07_splitting_b0", all(c >= 6 for c in counts),
                   {"ns": list(ctx.ns), "simple_counts": counts})


# 8

@criterion("c08_splitting_sweep")
def splitting_sweep(ctx: CheckContext) -> CheckResult:
    X, Y = default_xy(SWEEP_N)
    rows = b_sweep(SWEEP_N, DEFAULT_B_SAMPLES, X, Y, workers=ctx.workers)
    bad = []
    for r in rows:
        if r.error is not None or r.simple_count < 6:
            bad.append(r.b)
            continue
        ctx.record(_label("L_sweep", SWEEP_N, r.b), quantize(X, Y, _pencil(SWEEP_N, r.b)), r.multiplicities)
    return _result("c08_splitting_sweep", not bad, {
        "n": SWEEP_N,
        "samples": len(rows),
        "min_simple_count": min((r.simple_count for r in rows if r.simple_count is not None), default=None),
        "failing_b": bad,
    })


# 9

@criterion("c09_laffey")
def laffey(ctx: CheckContext) -> CheckResult:
    L = quantize_laffey()
    p = char_poly(L)
    cert = certify_polynomial(p)
    ctx.record("laffey_L", L, cert.multiplicity_table())
    d = det(L).re
    disc = discriminant(p)
    P = build_laffey()
    system = lax_commutator_system(P.H, P.K)
    certified = lax_rank_certify(system, p)
    ok = (d == 2 ** 40 and disc != 0 and cert.simple_count == 16 and len(system.unknowns) == 28
          and len(system.equations) == 36 and certified)
    return _result("c09_laffey", ok, {
        "det": d,
        "discriminant_nonzero": disc != 0,
        "simple_count": cert.simple_count,
        "unknowns": len(system.unknowns),
        "equations": len(system.equations),
        "rank_certified": certified,
    })


# 10

@criterion("c10_lss")
def lss(ctx: CheckContext) -> CheckResult:
    rows, any_nonzero = lss_discriminant_scan(STANDARD_LSS)
    for r in rows:
        M = lss_quantized_M(STANDARD_LSS, r.s)
        MMt = M @ M.T
        ctx.record(_label("lss_MMt", r.s), MMt, certify_spectrum(MMt).multiplicity_table())
    ok = all(r.det_M == r.closed_form for r in rows) and any_nonzero
    return _result("c10_lss", ok, {
        "s": [r.s for r in rows],
        "det_M": [r.det_M for r in rows],
        "closed_form": [r.closed_form for r in rows],
        "discriminant_nonzero": [r.discriminant != 0 for r in rows],
    })


# 11

def _smallest_gap(M) -> float:
    e = float_eigenvalues(M).real
    return float(min(b - a for a, b in zip(e[:-1], e[1:]))) if len(e) > 1 else float("inf")


@criterion("c11_oracle_agreement")
def oracle_agreement(ctx: CheckContext) -> CheckResult:
    if not ctx.registry:
        for check in SPECTRAL_CHECKS:
            check(ctx)
    disagree = []
    gaps = []
    for label, (M, table) in ctx.registry.items():
        if float_multiplicity_table(M, REL_TOL) != sorted(table):
            disagree.append(label)
            gaps.append(f"{_smallest_gap(M):.3e}")
    return _result("c11_oracle_agreement", not disagree, {
        "rel_tol": "1/100000000",
        "matrices": len(ctx.registry),
        "disagreements": len(disagree),
        "disagreeing": disagree,
        "oracle_smallest_float_gap": gaps,
    })


# 12

@criterion("c12_probe")
def probe(ctx: CheckContext) -> CheckResult:
    fraction, rows = random_quantisation_probe(_pencil(4, 1), PROBE_TRIALS, ctx.seed, workers=ctx.workers)
    broken = sum(1 for r in rows if not r.square)
    exact = Fraction(broken, PROBE_TRIALS)
    return _result("c12_probe", exact >= PROBE_THRESHOLD,
                   {"trials": PROBE_TRIALS, "seed": ctx.seed, "non_square_fraction": exact})


SPECTRAL_CHECKS = (family_squareness, full_algebra, k_closed_form, similarity, splitting_b0,
                   splitting_sweep, laffey, lss)

ALL_CHECKS = (family_squareness, full_algebra, k_closed_form, block_determinant_gap, similarity,
              symmetric_ladder, splitting_b0, splitting_sweep, laffey, lss, oracle_agreement, probe)


def run_check(check, ctx: CheckContext) -> CheckResult:
    """Run one check, timing it; an exception becomes a failed result."""
    start = time.perf_counter()
    try:
        result = check(ctx)
    except Exception as exc:  # reported, never swallowed silently
        result = CheckResult(getattr(check, "check_name", check.__name__), "fail", {"error": f"{type(exc).__name__}: {exc}"})
    result.seconds = time.perf_counter() - start
    return result
