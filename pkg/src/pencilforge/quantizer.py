"""Quantised pencils X (X) H + Y (X) K and exact simple-eigenvalue certificates."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    ExactMatrix,
    GaussianRational,
    RationalPolynomial,
    SquarefreeDecomposition,
    char_poly,
    gcd_poly,
    kronecker,
    poly_sqrt,
    principal_minor_sum,
    squarefree_decompose,
)
from .family import (
    DiagnosticParameterWarning,
    FamilyParams,
    SPLIT_X,
    PencilPair,
    build_pencil,
    split_y,
)
from .parallel import pmap


class UnsupportedModulus(ValueError):
    """An off-diagonal entry has irrational modulus."""


def quantize(X: ExactMatrix, Y: ExactMatrix, P: PencilPair) -> ExactMatrix:
    if X.shape != Y.shape or not X.is_square:
        raise ValueError("X and Y must be square of equal order")
    if not (X.is_hermitian() and Y.is_hermitian()):
        raise ValueError("X and Y must be hermitian")
    return kronecker(X, P.H) + kronecker(Y, P.K)


@dataclass(frozen=True)
class SpectralCertificate:
    char: RationalPolynomial
    decomposition: SquarefreeDecomposition
    simple_count: int
    all_even: bool
    distinct_count: int

    @property
    def order(self) -> int:
        return self.char.degree

    def multiplicity_table(self) -> list[int]:
        return self.decomposition.multiplicity_table()


def certify_polynomial(p: RationalPolynomial) -> SpectralCertificate:
    dec = squarefree_decompose(p)
    simple = dec.part(1).degree
    all_even = all(m % 2 == 0 for _, m in dec.parts)
    distinct = sum(f.degree for f, _ in dec.parts)
    return SpectralCertificate(p, dec, simple, all_even, distinct)


def certify_spectrum(M: ExactMatrix) -> SpectralCertificate:
    if not M.is_hermitian():
        raise ValueError("certify_spectrum needs a hermitian matrix")
    return certify_polynomial(char_poly(M))


def shared_eigenvalue_bound(L1: ExactMatrix, L2: ExactMatrix) -> int:
    """Degree of gcd(char L1, char L2): the number of shared eigenvalues."""
    if L1.shape != L2.shape:
        raise ValueError("L1 and L2 must have the same order")
    if not (L1.is_hermitian() and L2.is_hermitian()):
        raise ValueError("L1 and L2 must be hermitian")
    p1, p2 = char_poly(L1), char_poly(L2)
    for p in (p1, p2):
        if gcd_poly(p, p.derivative()).degree > 0:
            raise ValueError("input block has a repeated eigenvalue")
    return gcd_poly(p1, p2).degree


@dataclass(frozen=True)
class GershgorinReport:
    discs: tuple  # (center, radius) pairs
    all_disjoint: bool
    min_gap: Fraction | None


def _modulus(z: GaussianRational) -> Fraction:
    if not z.im:
        return abs(z.re)
    from .exact.poly import _fraction_sqrt

    r = _fraction_sqrt(z.abs2())
    if r is None:
        raise UnsupportedModulus(f"|{z}| is irrational")
    return r


def gershgorin(M: ExactMatrix) -> GershgorinReport:
    """Row discs on the real line; disjointness is decided exactly."""
    if not M.is_hermitian():
        raise ValueError("gershgorin expects a hermitian matrix")
    n = M.rows
    discs = []
    for i in range(n):
        radius = sum((_modulus(M[i, j]) for j in range(n) if j != i), Fraction(0))
        discs.append((M[i, i].re, radius))
    gap = None
    for i in range(n):
        for j in range(i + 1, n):
            g = abs(discs[i][0] - discs[j][0]) - discs[i][1] - discs[j][1]
            gap = g if gap is None or g < gap else gap
    return GershgorinReport(tuple(discs), gap is None or gap > 0, gap)


def elementary_symmetric(M: ExactMatrix, kmax: int) -> list[Fraction]:
    """e_0..e_kmax of the eigenvalues from the characteristic polynomial."""
    p = char_poly(M)
    n = M.rows
    return [(-1) ** k * p[n - k] for k in range(kmax + 1)]


@dataclass(frozen=True)
class SymPolyComparison:
    e_values: tuple  # (k, e_k(L1), e_k(L2), difference)

    def difference(self, k: int) -> Fraction:
        for kk, _, _, d in self.e_values:
            if kk == k:
                return d
        raise KeyError(k)


MINOR_PATH_KMAX = 4


def sym_poly_compare(L1: ExactMatrix, L2: ExactMatrix, kmax: int) -> SymPolyComparison:
    """e_k(L1) - e_k(L2) for k = 1..kmax, cross-checked against principal minor sums."""
    if L1.shape != L2.shape:
        raise ValueError("matrices must have equal order")
    if kmax > L1.rows or kmax < 1:
        raise ValueError("kmax must lie in 1..order")
    e1 = elementary_symmetric(L1, kmax)
    e2 = elementary_symmetric(L2, kmax)
    for k in range(1, min(kmax, MINOR_PATH_KMAX) + 1):
        for m, e in ((L1, e1), (L2, e2)):
            if principal_minor_sum(m, k) != e[k]:
                raise ArithmeticError(f"e_{k}: coefficient and minor-sum paths disagree")
    rows = tuple((k, e1[k], e2[k], e1[k] - e2[k]) for k in range(1, kmax + 1))
    return SymPolyComparison(rows)


def default_xy(n: int) -> tuple[ExactMatrix, ExactMatrix]:
    q = FamilyParams(n).q
    return SPLIT_X, split_y(q)


DEFAULT_B_SAMPLES = tuple(Fraction(s) for s in (
    "1", "-1", "2", "-2", "1/3", "7/5", "-7/5", "22/7", "1/1000", "-1/1000",
    "3", "1/2", "-1/2", "5/3", "-9/4", "13/11", "100", "-31/17", "2/9", "355/113",
))


@dataclass(frozen=True)
class SweepRow:
    b: Fraction
    simple_count: int | None
    all_even_unquantised: bool | None
    error: str | None = None
    multiplicities: tuple = ()


def _sweep_row(n, b, X, Y, xy) -> SweepRow:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DiagnosticParameterWarning)
            pair = build_pencil(FamilyParams(n, b))
        cert = certify_spectrum(quantize(X, Y, pair))
        base = certify_spectrum(pair.at(*xy))
        return SweepRow(Fraction(b), cert.simple_count, base.all_even, None,
                        tuple(cert.multiplicity_table()))
    except Exception as exc:  # recorded per row
        return SweepRow(Fraction(b), None, None, f"{type(exc).__name__}: {exc}")


def b_sweep(n: int, bs: Sequence, X: ExactMatrix | None = None, Y: ExactMatrix | None = None,
            xy=(1, 1), workers: int = 1) -> list[SweepRow]:
    """Simple-eigenvalue count of the quantised family at each b, in input order."""
    if n < 4:
        raise ValueError("n must be >= 4")
    if X is None or Y is None:
        X, Y = default_xy(n)
    args = [(n, Fraction(b), X, Y, xy) for b in bs]
    return pmap(_sweep_row, args, workers)


def random_b_samples(count: int, seed: int, height: int = 10) -> list[Fraction]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        b = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if b and b not in out:
            out.append(b)
    return out


def random_hermitian_2x2(rng: random.Random, height: int = 10) -> ExactMatrix:
    def r():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    off = GaussianRational(r(), r())
    return ExactMatrix([[r(), off], [off.conjugate(), r()]])


@dataclass(frozen=True)
class ProbeRow:
    trial: int
    X: ExactMatrix
    Y: ExactMatrix
    square: bool


def _probe_row(trial, X, Y, P) -> ProbeRow:
    p = char_poly(quantize(X, Y, P))
    return ProbeRow(trial, X, Y, poly_sqrt(p) is not None)


def probe_pairs(trials: int, seed: int, height: int = 10) -> list[tuple[ExactMatrix, ExactMatrix]]:
    """Seeded random hermitian 2x2 pairs without a common eigenvector (they do not commute)."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < trials:
        X = random_hermitian_2x2(rng, height)
        Y = random_hermitian_2x2(rng, height)
        if not X.commutator(Y).is_zero():
            pairs.append((X, Y))
    return pairs


def random_quantisation_probe(P: PencilPair, trials: int, seed: int, height: int = 10,
                              workers: int = 1) -> tuple[float, list[ProbeRow]]:
    """Fraction of random quantisations whose characteristic polynomial is not a square."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pairs = probe_pairs(trials, seed, height)
    rows = pmap(_probe_row, [(k, X, Y, P) for k, (X, Y) in enumerate(pairs)], workers)
    broken = sum(1 for r in rows if not r.square)
    return broken / trials, rows
