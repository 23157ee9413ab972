import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pencilforge.exact import ExactMatrix, char_poly, det, poly_sqrt, principal_submatrix
from pencilforge.family import (
    ALPHA,
    BETA,
    I2,
    DiagnosticParameterWarning,
    FamilyParams,
    PencilPair,
    U,
    build_A,
    build_B,
    build_pencil,
    expected_K,
    quantised_b0,
    split_at_b0,
    split_permutation,
)

from conftest import small_fractions

nonzero_b = small_fractions(50).filter(bool)
big_b = st.builds(Fraction, st.integers(-10 ** 12, 10 ** 12), st.integers(1, 10 ** 9)).filter(bool)


def test_params():
    assert FamilyParams(4).q == 7
    assert FamilyParams(5).q == Fraction(23, 2)
    assert FamilyParams(4, "1/3").b == Fraction(1, 3)
    with pytest.raises(ValueError):
        FamilyParams(3)
    with pytest.raises(ValueError):
        FamilyParams(4.0)


def test_b_zero_is_flagged():
    assert FamilyParams(4, 0).diagnostic
    with pytest.warns(DiagnosticParameterWarning):
        P = build_pencil(FamilyParams(4, 0))
    assert P.provenance["diagnostic"]


def test_pencil_pair_validates():
    with pytest.raises(ValueError):
        PencilPair(U, I2)
    with pytest.raises(ValueError):
        PencilPair(I2, ExactMatrix.identity(4))


def test_build_A_layout_n4():
    A = build_A(FamilyParams(4, 0))
    for i in range(4):
        assert A.block(i, i) == U.scale(7 + i)
    assert A.block(1, 2) == BETA and A.block(1, 3).is_zero()
    assert all(A.block(0, j) == ALPHA for j in (1, 2, 3))
    b = Fraction(5, 3)
    A = build_A(FamilyParams(4, b))
    assert A.block(1, 2) == ALPHA.scale(b) + BETA
    assert A.block(1, 3) == ALPHA.scale(b)
    assert A.block(2, 3).is_zero()


def test_build_B():
    assert build_B(1) == U
    B = build_B(4)
    assert B @ B == -ExactMatrix.identity(8)
    assert B.T == -B


def test_K_n4():
    assert build_pencil(FamilyParams(4, 1)).K == ExactMatrix.diag([-14, -14, -16, -16, -18, -18, -20, -20])


@given(nonzero_b)
def test_H_blocks_n4(b):
    H = build_pencil(FamilyParams(4, b)).H
    assert H.block(0, 2) == ExactMatrix([[b, -1], [-3, b]])
    assert H.block(0, 3) == ExactMatrix([[b, -3], [-3, b]])
    assert H.block(0, 1) == ExactMatrix([[-2 * b, -2], [0, -2 * b]])


def test_H_second_row_at_b1():
    H = build_pencil(FamilyParams(4, 1)).H
    assert H.block(1, 0) == ExactMatrix([[-2, 0], [-2, -2]])
    assert H.block(1, 1) == ExactMatrix.identity(2).scale(-68)
    assert H.block(1, 2) == ExactMatrix([[0, -1], [-1, -2]])
    assert H.block(1, 3) == ExactMatrix([[-1, -2], [-2, -1]])


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
@given(b=st.one_of(nonzero_b, big_b))
def test_family_invariants(n, b):
    p = FamilyParams(n, b)
    A, B = build_A(p), build_B(n)
    P = build_pencil(p)
    assert A.is_skew_symmetric() and B @ B == -ExactMatrix.identity(2 * n)
    assert P.H == A @ A and P.H.is_symmetric()
    assert P.K == expected_K(n)


@given(st.sampled_from([4, 5, 6]), nonzero_b, small_fractions(), small_fractions())
def test_square_expansion(n, b, x, y):
    p = FamilyParams(n, b)
    A, B = build_A(p), build_B(n)
    P = build_pencil(p)
    lhs = (A.scale(x) + B.scale(y)) @ (A.scale(x) + B.scale(y))
    rhs = P.H.scale(x * x) + P.K.scale(x * y) - ExactMatrix.identity(2 * n).scale(y * y)
    assert lhs == rhs


@given(st.sampled_from([4, 5, 6]), nonzero_b, small_fractions(), small_fractions())
def test_pencil_char_poly_is_square(n, b, x, y):
    P = build_pencil(FamilyParams(n, b))
    assert poly_sqrt(char_poly(P.at(x, y))) is not None


@pytest.mark.parametrize("n", [4, 5, 6])
def test_H_negative_definite(n):
    H = build_pencil(FamilyParams(n, Fraction(7, 5))).H
    # every root of det(x - H) negative: all coefficients positive, and det(x + H) alternates
    assert all(c > 0 for c in char_poly(H).coeffs)
    cs = char_poly(-H).coeffs
    assert all(c * (-1) ** (len(cs) - 1 - k) > 0 for k, c in enumerate(cs))


def test_split_permutation():
    assert split_permutation(4) == (1, 2, 4, 6, 0, 3, 5, 7)
    for n in (4, 5, 6):
        assert sorted(split_permutation(n)) == list(range(2 * n))


def test_split_n4_values():
    s = split_at_b0(4)
    assert [z.re for z in s.H1.diagonal()] == [-52, -66, -83, -101]
    assert det(principal_submatrix(s.H1, (0, 1, 2))) - det(principal_submatrix(s.H2, (0, 1, 2))) == -4


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_split_structure(n):
    s = split_at_b0(n)
    q = s.q
    diag = [z.re for z in s.H1.diagonal()]
    assert diag[:3] == [-q * q - n + 1, -q * q - 2 * q - 3, -q * q - 4 * q - 6]
    assert diag[3:] == [-(q + k - 1) ** 2 - 1 for k in range(4, n + 1)]
    D = s.H1 - s.H2
    assert D.submatrix(range(3, n), range(n)).is_zero()
    assert D.submatrix(range(n), range(3, n)).is_zero()
    c = 1 / q ** 2
    assert s.L1 == ExactMatrix.from_blocks([[s.H1, s.K1.scale(c)], [s.K1.scale(c), s.K1]])
    assert s.L2 == ExactMatrix.from_blocks([[s.H2, s.K1.scale(c)], [s.K1.scale(c), s.K1]])
    gap = det(principal_submatrix(s.H1, (0, 1, 2))) - det(principal_submatrix(s.H2, (0, 1, 2)))
    assert gap == -4 * (n - 3)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_split_preserves_spectra(n):
    s = split_at_b0(n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DiagnosticParameterWarning)
        H0 = build_pencil(FamilyParams(n, 0)).H
    assert char_poly(H0) == char_poly(s.H1) * char_poly(s.H2)
    assert char_poly(H0.permute(s.permutation)) == char_poly(H0)
    assert char_poly(quantised_b0(n)) == char_poly(s.L1) * char_poly(s.L2)
