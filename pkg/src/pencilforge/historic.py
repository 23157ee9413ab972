"""Quantisations of Laffey's 8x8 counterexample and the 6x6 LSS family."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    ExactMatrix,
    GaussianRational,
    RationalPolynomial,
    as_fraction,
    char_poly,
    det,
    discriminant,
    gcd_poly,
    kronecker,
    squarefree_decompose,
    xgcd_poly,
)
from .family import PencilPair

LAFFEY_H = (
    (-122, 0, 12, 18, -30, 18, 26, 10),
    (0, -122, -6, -12, -16, -28, 20, -16),
    (12, -6, -218, 0, 44, 8, 24, 12),
    (18, -12, 0, -218, -2, -34, -10, 22),
    (-30, -16, 44, -2, -216, 0, -12, -8),
    (18, -28, 8, -34, 0, -216, -8, 36),
    (26, 20, 24, -10, -12, -8, -120, 0),
    (10, -16, 12, 22, -8, 36, 0, -120),
)
LAFFEY_K_DIAG = (-4, -4, 4, 4, -8, -8, 8, 8)

LAFFEY_X = ExactMatrix([[1, 0], [0, 0]])
LAFFEY_Y = ExactMatrix([[0, 1], [1, 0]])


def build_laffey() -> PencilPair:
    return PencilPair(ExactMatrix(LAFFEY_H), ExactMatrix.diag(LAFFEY_K_DIAG), {"family": "laffey"})


def quantize_laffey() -> ExactMatrix:
    """L = X (X) H + Y (X) K = [[H, K], [K, 0]]."""
    P = build_laffey()
    return kronecker(LAFFEY_X, P.H) + kronecker(LAFFEY_Y, P.K)


# rational functions in a formal variable, used for the auxiliary matrix

LAMBDA = RationalPolynomial((0, 1))


@dataclass(frozen=True)
class RationalFunction:
    num: RationalPolynomial
    den: RationalPolynomial

    @classmethod
    def make(cls, num: RationalPolynomial, den: RationalPolynomial) -> "RationalFunction":
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(RationalPolynomial(), RationalPolynomial.constant(1))
        g = gcd_poly(num, den)
        num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        return cls(num.scale(1 / lc), den.scale(1 / lc))

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("pole of the rational function")
        return self.num(x) / d

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class AuxiliaryMatrix:
    """H + K^2 / lambda, stored as the polynomial matrix lambda*H + K^2 over lambda."""

    scaled: tuple  # rows of RationalPolynomial entries of lambda*H + K^2

    @property
    def order(self) -> int:
        return len(self.scaled)

    def entry(self, i: int, j: int) -> RationalFunction:
        return RationalFunction.make(self.scaled[i][j], LAMBDA)

    def evaluate(self, lam) -> ExactMatrix:
        lam = as_fraction(lam)
        if not lam:
            raise ZeroDivisionError("the auxiliary matrix is undefined at lambda = 0")
        return ExactMatrix([[p(lam) / lam for p in row] for row in self.scaled])


def auxiliary_matrix(H: ExactMatrix, K: ExactMatrix) -> AuxiliaryMatrix:
    if not (H.is_real and K.is_real):
        raise ValueError("the auxiliary matrix is implemented for real H, K")
    if H.shape != K.shape or not H.is_square:
        raise ValueError("H and K must be square of equal order")
    if not det(K):
        raise ValueError("K is singular; the auxiliary matrix needs an invertible K")
    K2 = (K @ K).real_rows()
    h = H.real_rows()
    n = H.rows
    rows = tuple(tuple(RationalPolynomial((K2[i][j], h[i][j])) for j in range(n)) for i in range(n))
    return AuxiliaryMatrix(rows)


@dataclass(frozen=True)
class LaxSystem:
    """Linear equations in the strictly upper entries of a skew S asserting [lambda*M(lambda), S] = 0."""

    unknowns: tuple  # (i, j) with i < j, 0-based
    equations: tuple  # each a tuple of RationalPolynomial coefficients, one per unknown
    positions: tuple  # commutator entry (r, c) each equation came from

    def format_equation(self, k: int) -> str:
        terms = []
        for (i, j), c in zip(self.unknowns, self.equations[k]):
            if c:
                terms.append(f"({c})*s{i + 1},{j + 1}")
        return " + ".join(terms) if terms else "0"


def _normalise(eq: tuple) -> tuple:
    for c in eq:
        if c:
            lead = c.lc
            return tuple(p.scale(1 / lead) for p in eq)
    return eq


def lax_commutator_system(H: ExactMatrix, K: ExactMatrix) -> LaxSystem:
    aux = auxiliary_matrix(H, K)
    A = aux.scaled
    n = aux.order
    unknowns = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    index = {u: k for k, u in enumerate(unknowns)}
    zero = RationalPolynomial()

    def s_entry(a, b):
        # S[a][b] as (unknown index, sign)
        if a == b:
            return None
        if a < b:
            return index[(a, b)], 1
        return index[(b, a)], -1

    seen = set()
    equations, positions = [], []
    for r in range(n):
        for c in range(r, n):
            coeffs = [zero] * len(unknowns)
            for k in range(n):
                # (A S)[r][c] = sum_k A[r][k] S[k][c]
                e = s_entry(k, c)
                if e is not None and A[r][k]:
                    u, sg = e
                    coeffs[u] = coeffs[u] + A[r][k].scale(sg)
                # (S A)[r][c] = sum_k S[r][k] A[k][c]
                e = s_entry(r, k)
                if e is not None and A[k][c]:
                    u, sg = e
                    coeffs[u] = coeffs[u] - A[k][c].scale(sg)
            eq = tuple(coeffs)
            if not any(eq):
                continue
            key = _normalise(eq)
            if key in seen:
                continue
            seen.add(key)
            equations.append(eq)
            positions.append((r, c))
    return LaxSystem(unknowns, tuple(equations), tuple(positions))


def _full_column_rank_mod(rows: list, ncols: int, f: RationalPolynomial, start: int = 0,
                          used: frozenset = frozenset()) -> bool:
    """Full column rank over Q[x]/(f) for squarefree f, splitting f on zero divisors."""
    rows = [[e % f for e in row] for row in rows]
    used = set(used)
    for col in range(start, ncols):
        candidates = [r for r in range(len(rows)) if r not in used and rows[r][col]]
        if not candidates:
            return False
        candidates.sort(key=lambda r: (rows[r][col].degree, len(str(rows[r][col]))))
        p = candidates[0]
        piv = rows[p][col]
        g, inv, _ = xgcd_poly(piv, f)
        if g.degree > 0:
            # piv is a zero divisor: work on the coprime pieces separately
            other = f.exact_div(g)
            return (_full_column_rank_mod(rows, ncols, g, col, frozenset(used))
                    and _full_column_rank_mod(rows, ncols, other, col, frozenset(used)))
        prow = [(e * inv) % f if e else e for e in rows[p]]
        rows[p] = prow
        used.add(p)
        for r in candidates[1:]:
            c = rows[r][col]
            rows[r] = [((e - c * pe) % f) if (pe and k >= col) else e
                       for k, (e, pe) in enumerate(zip(rows[r], prow))]
    return True


def lax_rank_certify(sys: LaxSystem, char_of_L: RationalPolynomial) -> bool:
    """True iff only S = 0 solves the system at every root of char_of_L."""
    dec = squarefree_decompose(char_of_L)
    rows = [list(eq) for eq in sys.equations]
    ncols = len(sys.unknowns)
    if len(rows) < ncols:
        return False
    return all(_full_column_rank_mod(rows, ncols, f) for f, _ in dec.parts)


# LSS family

@dataclass(frozen=True)
class LssParams:
    x: Fraction
    y: Fraction
    xi: Fraction
    eta: Fraction
    c: Fraction
    r: Fraction  # stands for sqrt(1 - c^2)

    def __post_init__(self):
        for name in ("x", "y", "xi", "eta", "c", "r"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        checks = [
            (self.x ** 2 + self.y ** 2 == 1, "x^2 + y^2 = 1"),
            (self.xi ** 2 + self.eta ** 2 == 1, "xi^2 + eta^2 = 1"),
            (self.c ** 2 + self.r ** 2 == 1, "c^2 + r^2 = 1"),
            (0 < self.c < Fraction(1, 2), "0 < c < 1/2"),
            (self.r > 0, "r > 0"),
            (min(self.x, self.y, self.xi, self.eta) > 0, "x, y, xi, eta > 0"),
        ]
        for ok, identity in checks:
            if not ok:
                raise ValueError(f"LSS parameters violate {identity}")


STANDARD_LSS = LssParams(Fraction(3, 5), Fraction(4, 5), Fraction(5, 13), Fraction(12, 13),
                         Fraction(7, 25), Fraction(24, 25))

LSS_X = ExactMatrix([[0, 1], [1, 0]])
LSS_Y = ExactMatrix([[0, GaussianRational(0, 1)], [GaussianRational(0, -1), 0]])
# L(s) needs no reordering of the Kronecker basis to show the anti-block form
LSS_BASIS_ORDER = tuple(range(12))


def lss_A(p: LssParams) -> ExactMatrix:
    x, y, xi, eta, c, r = p.x, p.y, p.xi, p.eta, p.c, p.r
    return ExactMatrix([
        [0, x, 0, c * y, 0, 0],
        [0, 0, y, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, -c * x, 0, r * xi, 0],
        [0, 0, 0, 0, 0, eta],
        [0, 0, 0, 0, 0, 0],
    ])


def build_lss(p: LssParams) -> PencilPair:
    """H = A + A^T and K from 2A = H + iK."""
    A = lss_A(p)
    H = A + A.T
    K = (A.scale(2) - H).scale(GaussianRational(0, -1))
    return PencilPair(H, K, {"family": "lss", "params": p})


def lss_quantized_L(p: LssParams, s) -> ExactMatrix:
    s = as_fraction(s)
    P = build_lss(p)
    return kronecker(LSS_X, P.H).scale(s) + kronecker(LSS_Y, P.K)


def lss_quantized_M(p: LssParams, s) -> ExactMatrix:
    """Off-diagonal block M(s) of L(s) = [[0, M], [M^T, 0]]."""
    s = as_fraction(s)
    if s <= 1:
        raise ValueError("s must exceed 1")
    x, y, xi, eta, c, r = p.x, p.y, p.xi, p.eta, p.c, p.r
    a, m = s + 1, s - 1
    M = ExactMatrix([
        [0, a * x, 0, c * a * y, 0, 0],
        [m * x, 0, a * y, 0, 0, 0],
        [0, m * y, 0, -c * m * x, 0, 0],
        [c * m * y, 0, -c * a * x, 0, r * xi * a, 0],
        [0, 0, 0, r * xi * m, 0, eta * a],
        [0, 0, 0, 0, eta * m, 0],
    ])
    L = lss_quantized_L(p, s).permute(LSS_BASIS_ORDER)
    zero = ExactMatrix.zeros(6)
    if L != ExactMatrix.from_blocks([[zero, M], [M.T, zero]]):
        raise ArithmeticError("s X (x) H + Y (x) K does not reproduce [[0, M], [M^T, 0]]")
    return M


def lss_det_closed_form(p: LssParams, s) -> Fraction:
    s = as_fraction(s)
    return -p.c ** 2 * p.eta ** 2 * (s - 1) ** 3 * (s + 1) ** 3 * (p.x ** 2 + p.y ** 2) ** 2


@dataclass(frozen=True)
class LssScanRow:
    s: Fraction
    det_M: Fraction
    closed_form: Fraction
    discriminant: Fraction


def lss_discriminant_scan(p: LssParams, svalues=(2, 3, 4)) -> tuple[list[LssScanRow], bool]:
    rows = []
    for s in svalues:
        M = lss_quantized_M(p, s)
        d = det(M)
        disc = discriminant(char_poly(M @ M.T))
        rows.append(LssScanRow(as_fraction(s), d.re, lss_det_closed_form(p, s), disc))
    return rows, any(r.discriminant != 0 for r in rows)
