"""Dense matrices over Q(i) and the exact algorithms that certify everything else.

A matrix keeps its real and imaginary parts as separate tables of Fractions;
purely real matrices carry no imaginary table, which keeps the common case
(all of the counterexample families except LSS) on plain rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .gaussian import GaussianRational, as_fraction
from .poly import RationalPolynomial

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionError(ValueError):
    pass


def _zeros(r: int, c: int) -> list[list[Fraction]]:
    return [[_ZERO] * c for _ in range(r)]


def _freeze(table) -> tuple:
    return tuple(tuple(row) for row in table)


def _mul_tables(a, b) -> list[list[Fraction]]:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), _ZERO) for col in bt])
    return out


def _add_tables(a, b, sign=1):
    if sign == 1:
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


class ExactMatrix:
    """Immutable rows x cols matrix with Gaussian-rational entries."""

    __slots__ = ("rows", "cols", "_re", "_im")

    def __init__(self, data: Sequence[Sequence] = ()):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise DimensionError("ragged matrix rows")
        re = _zeros(rows, cols)
        im = None
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                z = GaussianRational.coerce(v)
                re[i][j] = z.re
                if z.im:
                    if im is None:
                        im = _zeros(rows, cols)
                    im[i][j] = z.im
        self.rows, self.cols = rows, cols
        self._re = _freeze(re)
        self._im = _freeze(im) if im is not None else None

    @classmethod
    def _from_parts(cls, re, im=None) -> "ExactMatrix":
        m = object.__new__(cls)
        m.rows = len(re)
        m.cols = len(re[0]) if re else 0
        m._re = _freeze(re)
        if im is not None and not any(x for row in im for x in row):
            im = None
        m._im = _freeze(im) if im is not None else None
        return m

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls._from_parts(_zeros(rows, rows if cols is None else cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        t = _zeros(n, n)
        for i in range(n):
            t[i][i] = _ONE
        return cls._from_parts(t)

    @classmethod
    def diag(cls, values: Iterable) -> "ExactMatrix":
        vals = [GaussianRational.coerce(v) for v in values]
        n = len(vals)
        re, im = _zeros(n, n), _zeros(n, n)
        for i, v in enumerate(vals):
            re[i][i], im[i][i] = v.re, v.im
        return cls._from_parts(re, im)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence]) -> "ExactMatrix":
        """Assemble from a grid of ExactMatrix blocks; None (or 0) marks a zero block."""
        heights = []
        for brow in blocks:
            h = next((b.rows for b in brow if isinstance(b, ExactMatrix)), None)
            if h is None:
                raise DimensionError("block row without any sized block")
            heights.append(h)
        widths = []
        for j in range(len(blocks[0])):
            w = next((brow[j].cols for brow in blocks if isinstance(brow[j], ExactMatrix)), None)
            if w is None:
                raise DimensionError("block column without any sized block")
            widths.append(w)
        re = _zeros(sum(heights), sum(widths))
        im = _zeros(sum(heights), sum(widths))
        r0 = 0
        for bi, brow in enumerate(blocks):
            c0 = 0
            for bj, b in enumerate(brow):
                if isinstance(b, ExactMatrix):
                    if (b.rows, b.cols) != (heights[bi], widths[bj]):
                        raise DimensionError("inconsistent block sizes")
                    for i in range(b.rows):
                        re[r0 + i][c0:c0 + b.cols] = b._re[i]
                        if b._im is not None:
                            im[r0 + i][c0:c0 + b.cols] = b._im[i]
                elif b not in (None, 0):
                    raise TypeError("blocks must be ExactMatrix, None or 0")
                c0 += widths[bj]
            r0 += heights[bi]
        return cls._from_parts(re, im)

    @classmethod
    def blockdiag(cls, *blocks: "ExactMatrix") -> "ExactMatrix":
        grid = [[b if i == j else cls.zeros(b.rows, c.cols) for j, c in enumerate(blocks)]
                for i, b in enumerate(blocks)]
        return cls.from_blocks(grid)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_real(self) -> bool:
        return self._im is None

    def __getitem__(self, idx) -> GaussianRational:
        i, j = idx
        return GaussianRational._raw(self._re[i][j], self._im[i][j] if self._im else _ZERO)

    def real_part(self) -> "ExactMatrix":
        return ExactMatrix._from_parts(self._re)

    def imag_part(self) -> "ExactMatrix":
        if self._im is None:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix._from_parts(self._im)

    def real_rows(self) -> tuple:
        """Rational entry table; only valid for real matrices."""
        if self._im is not None:
            raise ValueError("matrix has nonzero imaginary part")
        return self._re

    def entries(self) -> list[GaussianRational]:
        """Row-major entries."""
        return [self[i, j] for i in range(self.rows) for j in range(self.cols)]

    def tolist(self) -> list[list[GaussianRational]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def field_rows(self) -> list[list]:
        """Mutable copy of the entries: Fractions for real matrices, GaussianRationals otherwise."""
        if self._im is None:
            return [list(r) for r in self._re]
        return self.tolist()

    def block(self, i: int, j: int, size: int = 2) -> "ExactMatrix":
        """The (i, j) block of a matrix partitioned into size x size blocks (0-based)."""
        return self.submatrix(range(i * size, (i + 1) * size), range(j * size, (j + 1) * size))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        re = [[self._re[i][j] for j in cols] for i in rows]
        im = [[self._im[i][j] for j in cols] for i in rows] if self._im else None
        return ExactMatrix._from_parts(re, im)

    def permute(self, perm: Sequence[int]) -> "ExactMatrix":
        """Symmetric permutation: entry (i, j) of the result is entry (perm[i], perm[j])."""
        if sorted(perm) != list(range(self.rows)) or not self.is_square:
            raise DimensionError("perm must be a permutation of the row indices of a square matrix")
        return self.submatrix(perm, perm)

    # algebra

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._re == other._re and self._im == other._im

    def __hash__(self):
        return hash((self._re, self._im))

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        re = _add_tables(self._re, other._re)
        im = _combine_im(self, other, 1)
        return ExactMatrix._from_parts(re, im)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        re = _add_tables(self._re, other._re, -1)
        im = _combine_im(self, other, -1)
        return ExactMatrix._from_parts(re, im)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.coerce(c)
        a, b = c.re, c.im
        re = [[a * x for x in row] for row in self._re]
        im = [[b * x for x in row] for row in self._re] if b else None
        if self._im is not None:
            re = [[x - b * y for x, y in zip(r, ri)] for r, ri in zip(re, self._im)] if b else re
            part = [[a * y for y in row] for row in self._im]
            im = _add_tables(im, part) if im is not None else part
        return ExactMatrix._from_parts(re, im)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return self @ c
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    def __rmul__(self, c):
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        re = _mul_tables(self._re, other._re)
        im = None
        if self._im is not None and other._im is not None:
            re = _add_tables(re, _mul_tables(self._im, other._im), -1)
        if self._im is not None:
            im = _mul_tables(self._im, other._re)
        if other._im is not None:
            part = _mul_tables(self._re, other._im)
            im = _add_tables(im, part) if im is not None else part
        return ExactMatrix._from_parts(re, im)

    def __pow__(self, k: int):
        if not self.is_square or k < 0:
            raise DimensionError("matrix power needs a square matrix and k >= 0")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "ExactMatrix":
        re = [list(c) for c in zip(*self._re)] if self.rows else []
        im = [list(c) for c in zip(*self._im)] if self._im else None
        return ExactMatrix._from_parts(re, im)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def conjugate(self) -> "ExactMatrix":
        if self._im is None:
            return self
        return ExactMatrix._from_parts(self._re, [[-x for x in row] for row in self._im])

    def conj_transpose(self) -> "ExactMatrix":
        return self.conjugate().transpose()

    @property
    def H(self) -> "ExactMatrix":
        return self.conj_transpose()

    def is_hermitian(self) -> bool:
        return self.is_square and self == self.conj_transpose()

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def is_skew_symmetric(self) -> bool:
        return self.is_square and self.transpose() == -self

    def is_diagonal(self) -> bool:
        return self.is_square and all(
            not self._re[i][j] and not (self._im and self._im[i][j])
            for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def is_zero(self) -> bool:
        return self._im is None and not any(x for row in self._re for x in row)

    def diagonal(self) -> list[GaussianRational]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def trace(self) -> GaussianRational:
        acc = GaussianRational(0)
        for v in self.diagonal():
            acc = acc + v
        return acc

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def to_numpy(self):
        import numpy as np

        re = np.array([[float(x) for x in row] for row in self._re], dtype=float).reshape(self.rows, self.cols)
        if self._im is None:
            return re
        im = np.array([[float(x) for x in row] for row in self._im], dtype=float).reshape(self.rows, self.cols)
        return re + 1j * im

    def __repr__(self):
        return f"ExactMatrix({[[str(v) for v in row] for row in self.tolist()]})"


def _combine_im(a: ExactMatrix, b: ExactMatrix, sign: int):
    if a._im is None and b._im is None:
        return None
    ai = a._im if a._im is not None else _zeros(a.rows, a.cols)
    bi = b._im if b._im is not None else _zeros(b.rows, b.cols)
    return _add_tables(ai, bi, sign)


def _require_square(m: ExactMatrix):
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def _to_gaussian(x) -> GaussianRational:
    return x if isinstance(x, GaussianRational) else GaussianRational._raw(x, _ZERO)


def det(m: ExactMatrix) -> GaussianRational:
    """Determinant by Bareiss fraction-free elimination with row pivoting."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return GaussianRational(1)
    a = m.field_rows()
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return GaussianRational(0)
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (piv * ri[j] - aik * rk[j]) / prev
        prev = piv
    d = a[n - 1][n - 1]
    return _to_gaussian(d if sign == 1 else -d)


def rank(m: ExactMatrix) -> int:
    a = m.field_rows()
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m.rows):
            f = a[i][c]
            if f:
                f = f / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m.rows:
            break
    return r


def hessenberg(m: ExactMatrix) -> list[list]:
    """Upper Hessenberg form similar to m, via exact elimination."""
    _require_square(m)
    n = m.rows
    h = m.field_rows()
    for k in range(1, n - 1):
        p = next((i for i in range(k, n) if h[i][k - 1]), None)
        if p is None:
            continue
        if p != k:
            h[k], h[p] = h[p], h[k]
            for row in h:
                row[k], row[p] = row[p], row[k]
        t = h[k][k - 1]
        for i in range(k + 1, n):
            if not h[i][k - 1]:
                continue
            u = h[i][k - 1] / t
            ri, rk = h[i], h[k]
            for j in range(k - 1, n):
                ri[j] = ri[j] - u * rk[j]
            for row in h:
                row[k] = row[k] + u * row[i]
    return h


def char_poly_coeffs(m: ExactMatrix, method: str = "hessenberg") -> list[GaussianRational]:
    """Coefficients of det(xI - m), lowest degree first, over Q(i)."""
    _require_square(m)
    if method == "hessenberg":
        cs = _char_poly_hessenberg(m)
    elif method == "faddeev":
        cs = _char_poly_faddeev(m)
    else:
        raise ValueError(f"unknown characteristic polynomial method {method!r}")
    return [_to_gaussian(c) for c in cs]


def _poly_mul_linear(p: list, c) -> list:
    # (x - c) * p
    out = [0] * (len(p) + 1)
    for k, a in enumerate(p):
        out[k + 1] = out[k + 1] + a
        out[k] = out[k] - c * a
    return out


def _char_poly_hessenberg(m: ExactMatrix) -> list:
    h = hessenberg(m)
    n = m.rows
    zero = _ZERO
    polys = [[_ONE]]
    for k in range(n):
        p = _poly_mul_linear(polys[k], h[k][k])
        prod = _ONE
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1][i]
            if not prod:
                break
            c = h[i][k] * prod
            if c:
                for d, a in enumerate(polys[i]):
                    p[d] = p[d] - c * a
        polys.append([x if x else zero for x in p])
    return polys[n]


def _char_poly_faddeev(m: ExactMatrix) -> list:
    n = m.rows
    a = m.field_rows()
    coeffs = [None] * (n + 1)
    coeffs[n] = _ONE
    mk = [[_ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        prod = [[sum((a[i][t] * mk[t][j] for t in range(n) if mk[t][j]), _ZERO) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] = prod[i][i] + c_prev
        mk = prod
        am = sum((a[i][t] * mk[t][i] for i in range(n) for t in range(n)), _ZERO)
        coeffs[n - k] = -am / k
    return coeffs


def char_poly(m: ExactMatrix, method: str = "hessenberg") -> RationalPolynomial:
    """Monic det(xI - m) as a rational polynomial.

    Raises ArithmeticError when a coefficient has a nonzero imaginary part;
    for a hermitian input that can only mean an arithmetic fault.
    """
    cs = char_poly_coeffs(m, method)
    if any(c.im for c in cs):
        if m.is_hermitian():
            raise ArithmeticError("hermitian matrix produced a nonreal characteristic polynomial")
        raise ArithmeticError("characteristic polynomial has nonreal coefficients")
    return RationalPolynomial(c.re for c in cs)


def kronecker(x: ExactMatrix, m: ExactMatrix) -> ExactMatrix:
    """Kronecker product x (X) m."""
    grid = [[m.scale(x[i, j]) for j in range(x.cols)] for i in range(x.rows)]
    return ExactMatrix.from_blocks(grid)


def principal_submatrix(m: ExactMatrix, anchors: Sequence[int]) -> ExactMatrix:
    """Rows and columns restricted to the 0-based, strictly increasing anchor indices."""
    _require_square(m)
    anchors = list(anchors)
    if any(b <= a for a, b in zip(anchors, anchors[1:])):
        raise ValueError("anchor points must be strictly increasing and distinct")
    if anchors and (anchors[0] < 0 or anchors[-1] >= m.rows):
        raise IndexError("anchor point out of range")
    return m.submatrix(anchors, anchors)


def principal_minor_sum(m: ExactMatrix, k: int) -> GaussianRational:
    """Sum of all k x k principal minors, i.e. e_k of the eigenvalues."""
    _require_square(m)
    acc = GaussianRational(0)
    for idx in combinations(range(m.rows), k):
        acc = acc + det(m.submatrix(idx, idx))
    return acc


def evaluate_poly_at_matrix(p: RationalPolynomial, m: ExactMatrix) -> ExactMatrix:
    """Horner evaluation of p at a square matrix."""
    _require_square(m)
    n = m.rows
    acc = ExactMatrix.zeros(n, n)
    eye = ExactMatrix.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ m + eye.scale(c)
    return acc


def solve_nullspace_dim(rows: list[list[Fraction]], ncols: int) -> int:
    """Dimension of the nullspace of a rational matrix given as rows."""
    return ncols - rank(ExactMatrix._from_parts(rows)) if rows else ncols


def as_matrix(data) -> ExactMatrix:
    return data if isinstance(data, ExactMatrix) else ExactMatrix(data)


def fraction_matrix(rows: Sequence[Sequence]) -> ExactMatrix:
    """Convenience constructor for rational tables (ints, Fractions, 'p/q' strings)."""
    return ExactMatrix._from_parts([[as_fraction(v) for v in row] for row in rows])
