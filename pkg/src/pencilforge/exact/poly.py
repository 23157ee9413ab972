"""Univariate polynomials over Q and the gcd machinery built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .gaussian import as_fraction


class RationalPolynomial:
    """Dense polynomial with Fraction coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs: list) -> "RationalPolynomial":
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "RationalPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots) -> "RationalPolynomial":
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if k == 1 else f"x^{k}")
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        return RationalPolynomial._raw(cs)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial()
        cs = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    cs[i + j] += x * y
        return RationalPolynomial._raw(cs)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = RationalPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "RationalPolynomial":
        c = as_fraction(c)
        return RationalPolynomial._raw([c * x for x in self.coeffs])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RationalPolynomial":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return RationalPolynomial._raw([c / lc for c in self.coeffs])

    def divmod(self, other: "RationalPolynomial"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        lcb = other.coeffs[-1]
        if len(r) - 1 < db:
            return RationalPolynomial(), RationalPolynomial._raw(r)
        q = [Fraction(0)] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            c = c / lcb
            q[k] = c
            for j in range(db + 1):
                if b[j]:
                    r[k + j] -= c * b[j]
        return RationalPolynomial._raw(q), RationalPolynomial._raw(r[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "RationalPolynomial") -> "RationalPolynomial":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def to_float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


X = RationalPolynomial((0, 1))


def gcd_poly(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd over Q by the Euclidean algorithm with monic remainders."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p.monic(), q.monic()
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def xgcd_poly(p: RationalPolynomial, q: RationalPolynomial):
    """Return (g, s, t) with s*p + t*q = g, g monic."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = p, q
    s0, s1 = RationalPolynomial.constant(1), RationalPolynomial()
    t0, t1 = RationalPolynomial(), RationalPolynomial.constant(1)
    while r1:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    lc = r0.lc
    return r0.scale(1 / lc), s0.scale(1 / lc), t0.scale(1 / lc)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """p = lc(p) * prod(factor ** multiplicity); factors monic, squarefree, pairwise coprime."""

    parts: tuple

    def multiplicity_table(self) -> list[int]:
        """One entry per eigenvalue counted with multiplicity, holding that multiplicity; sorted."""
        table = []
        for f, m in self.parts:
            table.extend([m] * (f.degree * m))
        return sorted(table)

    def part(self, multiplicity: int) -> RationalPolynomial:
        for f, m in self.parts:
            if m == multiplicity:
                return f
        return RationalPolynomial.constant(1)

    def expand(self) -> RationalPolynomial:
        acc = RationalPolynomial.constant(1)
        for f, m in self.parts:
            acc = acc * f ** m
        return acc

    def squarefree_part(self) -> RationalPolynomial:
        acc = RationalPolynomial.constant(1)
        for f, _ in self.parts:
            acc = acc * f
        return acc


def squarefree_decompose(p: RationalPolynomial) -> SquarefreeDecomposition:
    """Yun's algorithm over Q."""
    if not p:
        raise ValueError("cannot decompose the zero polynomial")
    f = p.monic()
    parts = []
    if f.degree < 1:
        return SquarefreeDecomposition(())
    df = f.derivative()
    a = gcd_poly(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd_poly(b, d)
        if a.degree > 0:
            parts.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return SquarefreeDecomposition(tuple(parts))


def _fraction_sqrt(x: Fraction):
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def poly_sqrt(p: RationalPolynomial):
    """g with g*g == p and positive leading coefficient, or None when p is not a square over Q."""
    if not p:
        raise ValueError("square root of the zero polynomial")
    d = p.degree
    if d % 2:
        return None
    top = _fraction_sqrt(p.lc)
    if top is None:
        return None
    h = d // 2
    # solve for g from the top coefficient down: coefficient of x^(d-k) in g^2
    g = [Fraction(0)] * (h + 1)
    g[h] = top
    for k in range(1, h + 1):
        acc = p[d - k]
        for j in range(1, k):
            acc -= g[h - j] * g[h - k + j]
        g[h - k] = acc / (2 * top)
    root = RationalPolynomial._raw(g)
    if root * root != p:
        return None
    return root


def resultant(p: RationalPolynomial, q: RationalPolynomial) -> Fraction:
    """Resultant via the Euclidean remainder sequence."""
    if not p or not q:
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    a, b = p, q
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return sign * acc * b.lc ** m
        r = a % b
        if not r:
            return Fraction(0)
        k = r.degree
        if (m * n) % 2:
            sign = -sign
        acc *= b.lc ** (m - k)
        a, b = b, r


def discriminant(p: RationalPolynomial) -> Fraction:
    """(-1)^(d(d-1)/2) * res(p, p') / lc(p)."""
    d = p.degree
    if d < 1:
        raise ValueError("discriminant of a constant polynomial")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lc


def sylvester_matrix(p: RationalPolynomial, q: RationalPolynomial) -> list[list[Fraction]]:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return rows


def poly_from_pairs(pairs: Sequence) -> RationalPolynomial:
    return RationalPolynomial(Fraction(int(n), int(d)) for n, d in pairs)
