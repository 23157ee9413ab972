"""The one-parameter counterexample family built from skew matrices A_(b) and B.

All indices in this module are 0-based; block (i, j) means the 2x2 block in
block-row i and block-column j.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import ExactMatrix, as_fraction, principal_submatrix

ALPHA = ExactMatrix([[1, 0], [0, -1]])
BETA = ExactMatrix([[0, 1], [1, 0]])
U = ExactMatrix([[0, -1], [1, 0]])
I2 = ExactMatrix.identity(2)

# quantisation matrices used by the b = 0 analysis, parametrised by q
SPLIT_X = ExactMatrix([[1, 0], [0, 0]])


def split_y(q: Fraction) -> ExactMatrix:
    return ExactMatrix([[0, 1 / q ** 2], [1 / q ** 2, 1]])


class DiagnosticParameterWarning(UserWarning):
    """b = 0 lies outside the counterexample family; constructions there are diagnostic only."""


@dataclass(frozen=True)
class FamilyParams:
    n: int
    b: Fraction = Fraction(1)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 4:
            raise ValueError(f"the family needs an integer n >= 4, got {self.n!r}")
        object.__setattr__(self, "b", as_fraction(self.b))

    @property
    def q(self) -> Fraction:
        return Fraction(self.n * self.n, 2) - 1

    @property
    def diagnostic(self) -> bool:
        return self.b == 0

    @property
    def order(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class PencilPair:
    H: ExactMatrix
    K: ExactMatrix
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.H.shape != self.K.shape or not self.H.is_square:
            raise ValueError("H and K must be square of equal order")
        if not (self.H.is_hermitian() and self.K.is_hermitian()):
            raise ValueError("H and K must be hermitian")

    @property
    def order(self) -> int:
        return self.H.rows

    def at(self, x, y) -> ExactMatrix:
        """The pencil xH + yK."""
        return self.H.scale(x) + self.K.scale(y)


@dataclass(frozen=True)
class BlockSplit:
    """The b = 0 decomposition after the symmetric permutation `permutation`."""

    n: int
    q: Fraction
    permutation: tuple
    A1: ExactMatrix
    H1: ExactMatrix
    H2: ExactMatrix
    K1: ExactMatrix
    L1: ExactMatrix
    L2: ExactMatrix


def _params(params) -> FamilyParams:
    if isinstance(params, FamilyParams):
        return params
    n, b = params
    return FamilyParams(n, b)


def build_A(params: FamilyParams) -> ExactMatrix:
    p = _params(params)
    n, q, b = p.n, p.q, p.b
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = U.scale(q + i)
    for j in range(1, n):
        grid[0][j] = ALPHA
        grid[j][0] = -ALPHA
    grid[1][2] = ALPHA.scale(b) + BETA
    grid[2][1] = -(ALPHA.scale(b) + BETA)
    grid[1][3] = ALPHA.scale(b)
    grid[3][1] = ALPHA.scale(-b)
    return ExactMatrix.from_blocks(grid)


def build_B(n: int) -> ExactMatrix:
    if n < 1:
        raise ValueError("B needs n >= 1")
    return ExactMatrix.blockdiag(*([U] * n))


def build_pencil(params: FamilyParams) -> PencilPair:
    """H = A^2 and K = AB + BA for the family member (n, b)."""
    p = _params(params)
    if p.diagnostic:
        warnings.warn("b = 0 is outside the counterexample family", DiagnosticParameterWarning, stacklevel=2)
    A = build_A(p)
    B = build_B(p.n)
    H = A @ A
    K = A @ B + B @ A
    return PencilPair(H, K, {"family": "new", "n": p.n, "b": p.b, "diagnostic": p.diagnostic})


def expected_K(n: int) -> ExactMatrix:
    """Closed form -2 diag(q, ..., q+n-1) (X) I_2."""
    q = FamilyParams(n).q
    vals = []
    for i in range(n):
        vals += [-2 * (q + i)] * 2
    return ExactMatrix.diag(vals)


def split_permutation(n: int) -> tuple:
    """Odd basis vectors first, then even ones; then swap positions 0 and n."""
    perm = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    perm[0], perm[n] = perm[n], perm[0]
    return tuple(perm)


def split_at_b0(n: int) -> BlockSplit:
    p = FamilyParams(n, 0)
    q = p.q
    perm = split_permutation(n)
    A0 = build_A(p).permute(perm)
    top_left = A0.submatrix(range(n), range(n))
    bottom_right = A0.submatrix(range(n, 2 * n), range(n, 2 * n))
    if not (top_left.is_zero() and bottom_right.is_zero()):
        raise ArithmeticError("permuted A_(0) is not block anti-diagonal")
    A1 = A0.submatrix(range(n), range(n, 2 * n))
    H1 = -(A1 @ A1.T)
    H2 = -(A1.T @ A1)
    K_perm = (build_A(p) @ build_B(n) + build_B(n) @ build_A(p)).permute(perm)
    K1 = K_perm.submatrix(range(n), range(n))
    c = 1 / q ** 2
    L1 = ExactMatrix.from_blocks([[H1, K1.scale(c)], [K1.scale(c), K1]])
    L2 = ExactMatrix.from_blocks([[H2, K1.scale(c)], [K1.scale(c), K1]])
    return BlockSplit(n, q, perm, A1, H1, H2, K1, L1, L2)


def quantised_b0(n: int) -> ExactMatrix:
    """L_(0) = X (X) H_(0) + Y (X) K with the b = 0 quantisation matrices."""
    from .exact import kronecker

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DiagnosticParameterWarning)
        pair = build_pencil(FamilyParams(n, 0))
    q = FamilyParams(n).q
    return kronecker(SPLIT_X, pair.H) + kronecker(split_y(q), pair.K)


__all__ = [
    "ALPHA",
    "BETA",
    "BlockSplit",
    "DiagnosticParameterWarning",
    "FamilyParams",
    "SPLIT_X",
    "PencilPair",
    "U",
    "build_A",
    "build_B",
    "build_pencil",
    "expected_K",
    "split_y",
    "principal_submatrix",
    "quantised_b0",
    "split_at_b0",
    "split_permutation",
]
