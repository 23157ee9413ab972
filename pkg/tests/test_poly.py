from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from pencilforge.exact import (
    ExactMatrix,
    RationalPolynomial,
    det,
    discriminant,
    gcd_poly,
    poly_sqrt,
    resultant,
    squarefree_decompose,
    sylvester_matrix,
    xgcd_poly,
)
from pencilforge.exact.poly import X

from conftest import small_fractions

polys = st.lists(small_fractions(), min_size=1, max_size=6).map(RationalPolynomial)


def test_basic_arithmetic():
    p = X ** 2 - 1
    assert p.degree == 2 and p(3) == 8
    assert p.derivative() == X.scale(2)
    assert RationalPolynomial().degree == -1
    assert (p * (X + 1)).degree == 3
    q, r = (X ** 3 + 1).divmod(X + 1)
    assert r == 0 and q == X ** 2 - X + 1
    with pytest.raises(ArithmeticError):
        (X ** 2 + 1).exact_div(X + 1)


def test_gcd_examples():
    assert gcd_poly(X ** 2 - 1, X - 1) == X - 1
    p = (X + 2).scale(3)
    assert gcd_poly(p, RationalPolynomial()) == X + 2
    with pytest.raises(ValueError):
        gcd_poly(RationalPolynomial(), RationalPolynomial())


def test_squarefree_examples():
    dec = squarefree_decompose((X ** 2 + 1) ** 2)
    assert dec.parts == ((X ** 2 + 1, 2),)
    assert squarefree_decompose(X ** 2 - 1).parts == ((X ** 2 - 1, 1),)
    dec = squarefree_decompose((X - 1) * (X - 2) ** 2 * (X - 3) ** 3)
    assert [m for _, m in dec.parts] == [1, 2, 3]
    assert dec.multiplicity_table() == [1, 2, 2, 3, 3, 3]


def test_poly_sqrt_examples():
    g = X ** 2 + 3 * X + 1
    assert poly_sqrt(g * g) == g
    assert poly_sqrt(X ** 2 + 1) is None
    assert poly_sqrt((X - 1) ** 2 * (X - 2)) is None
    assert poly_sqrt(RationalPolynomial.constant(Fraction(4, 9))) == Fraction(2, 3)
    with pytest.raises(ValueError):
        poly_sqrt(RationalPolynomial())


def test_discriminant_examples():
    assert discriminant(X ** 2 - 1) == 4
    assert discriminant((X - 1) ** 2) == 0
    a, b, c = 2, -3, -7
    assert discriminant(RationalPolynomial((c, b, a))) == b * b - 4 * a * c


def _root_product_disc(roots, lc=1):
    # lc^(2d-2) * prod_{i<j} (r_i - r_j)^2
    d = len(roots)
    acc = Fraction(lc) ** (2 * d - 2)
    for i in range(d):
        for j in range(i + 1, d):
            acc *= (roots[i] - roots[j]) ** 2
    return acc


@given(st.lists(small_fractions(), min_size=2, max_size=6), st.integers(1, 5))
def test_discriminant_matches_root_formula(roots, lc):
    p = RationalPolynomial.from_roots(roots).scale(lc)
    assert discriminant(p) == _root_product_disc(roots, lc)


@given(polys, polys)
def test_resultant_matches_sylvester_determinant(p, q):
    assume(p.degree >= 1 and q.degree >= 1)
    assert resultant(p, q) == det(ExactMatrix(sylvester_matrix(p, q))).re


@given(polys, polys)
def test_xgcd_bezout(p, q):
    assume(p or q)
    g, s, t = xgcd_poly(p, q)
    assert s * p + t * q == g
    assert g == gcd_poly(p, q)
    if p:
        assert p % g == 0


@given(st.lists(st.tuples(polys, st.integers(1, 3)), min_size=1, max_size=3))
def test_squarefree_remultiply(factors):
    p = RationalPolynomial.constant(1)
    for f, m in factors:
        if f.degree >= 1:
            p = p * f ** m
    assume(p.degree >= 1)
    dec = squarefree_decompose(p)
    assert dec.expand() == p.monic()
    for i, (f, _) in enumerate(dec.parts):
        assert gcd_poly(f, f.derivative()).degree == 0
        for g, _ in dec.parts[i + 1:]:
            assert gcd_poly(f, g).degree == 0


@given(polys)
def test_poly_sqrt_of_square(g):
    assume(g)
    root = poly_sqrt(g * g)
    assert root is not None and root * root == g * g
    assert root.lc > 0


@given(polys, polys)
def test_degree_of_product_and_monic_idempotent(p, q):
    assume(p and q)
    assert (p * q).degree == p.degree + q.degree
    assert p.monic().monic() == p.monic()
