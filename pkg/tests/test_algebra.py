import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from pencilforge.algebra import (
    CapExceeded,
    block_pair_commutator,
    check_constructibility,
    generated_algebra_dim,
    k_multiplicity_ok,
)
from pencilforge.exact import ExactMatrix, I
from pencilforge.family import ALPHA, BETA, FamilyParams, PencilPair, build_pencil, split_permutation
from pencilforge.quantizer import DEFAULT_B_SAMPLES

from conftest import fraction_rows


def brute_force_dim(gens, max_len):
    """Exact rank of every word of length <= max_len, vectorised; no incremental tricks."""
    d = gens[0].rows
    mats = [sympy.Matrix([[sympy.Rational(z.re.numerator, z.re.denominator)
                           + sympy.I * sympy.Rational(z.im.numerator, z.im.denominator)
                           for z in row] for row in g.tolist()]) for g in gens]
    vecs = [list(sympy.eye(d))]
    for length in range(1, max_len + 1):
        for word in itertools.product(mats, repeat=length):
            w = sympy.eye(d)
            for m in word:
                w = w * m
            vecs.append(list(w))
    return sympy.Matrix(vecs).rank()


def test_scalars_only():
    rep = generated_algebra_dim([ExactMatrix.identity(2)])
    assert rep.dimension == 1 and not rep.saturated


def test_alpha_beta_full():
    rep = generated_algebra_dim([ALPHA, BETA])
    assert rep.dimension == 4 and rep.saturated
    assert brute_force_dim([ALPHA, BETA], 2) == 4


def test_complex_generators():
    sigma_y = ExactMatrix([[0, -I], [I, 0]])
    assert generated_algebra_dim([sigma_y]).dimension == 2
    assert generated_algebra_dim([BETA, sigma_y]).dimension == 4


def test_argument_errors():
    with pytest.raises(ValueError):
        generated_algebra_dim([])
    with pytest.raises(ValueError):
        generated_algebra_dim([ALPHA, ExactMatrix.identity(3)])
    with pytest.raises(ValueError):
        generated_algebra_dim([ALPHA], cap=3)
    assert issubclass(CapExceeded, RuntimeError)


@settings(max_examples=8)
@given(fraction_rows(3, height=3), fraction_rows(3, height=3))
def test_matches_brute_force_words(a, b):
    gens = [ExactMatrix(a), ExactMatrix(b)]
    assert generated_algebra_dim(gens).dimension == brute_force_dim(gens, 4)


def test_block_diagonal_negative_control():
    g1 = ExactMatrix.blockdiag(ALPHA, BETA)
    g2 = ExactMatrix.blockdiag(BETA, ALPHA)
    rep = generated_algebra_dim([g1, g2])
    assert rep.dimension < 16
    assert rep.dimension == brute_force_dim([g1, g2], 4)


@pytest.mark.parametrize("n", [4, 5])
def test_family_full_algebra(n):
    P = build_pencil(FamilyParams(n, 1))
    assert generated_algebra_dim([P.H, P.K]).dimension == (2 * n) ** 2


def test_permutation_invariance():
    P = build_pencil(FamilyParams(4, Fraction(-7, 5)))
    perm = split_permutation(4)
    a = generated_algebra_dim([P.H, P.K]).dimension
    b = generated_algebra_dim([P.H.permute(perm), P.K.permute(perm)]).dimension
    assert a == b == 64


def test_criteria_b1():
    P = build_pencil(FamilyParams(4, 1))
    rep = check_constructibility(P, 1)
    assert rep.passed and rep.cond2_invertible_row == 0 and rep.excluded_b_values == ()
    assert block_pair_commutator(P.H, 0, 2, 3) == ExactMatrix([[0, 48], [-48, 0]])


@pytest.mark.parametrize("b", [Fraction(2), Fraction(-5, 7), Fraction(13, 3)])
def test_criteria_top_row_commutator_is_48b(b):
    H = build_pencil(FamilyParams(4, b)).H
    assert block_pair_commutator(H, 0, 2, 3) == ExactMatrix([[0, 48 * b], [-48 * b, 0]])


def test_criteria_b3_uses_second_row():
    P = build_pencil(FamilyParams(4, 3))
    rep = check_constructibility(P, 3)
    assert rep.passed and rep.cond2_invertible_row == 1
    assert rep.excluded_b_values == (3,)
    assert block_pair_commutator(P.H, 1, 2, 3) == ExactMatrix([[0, -48], [48, 0]])


def test_criteria_half_second_row_singular():
    P = build_pencil(FamilyParams(4, Fraction(1, 2)))
    rep = check_constructibility(P, Fraction(1, 2))
    assert rep.passed and rep.cond2_invertible_row == 0
    blocks = [P.H.block(1, j) for j in range(4)]
    assert any(b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0] == 0 for b in blocks)


def test_k_multiplicity_rule():
    assert k_multiplicity_ok(ExactMatrix.diag([1, 1, 2, 2]))
    assert not k_multiplicity_ok(ExactMatrix.diag([1, 1, 1, 2]))
    assert not k_multiplicity_ok(ExactMatrix.diag([1, 2, 1, 3]))
    assert not k_multiplicity_ok(ALPHA + BETA)


def test_criteria_fail_on_commuting_data():
    P = PencilPair(ExactMatrix.diag([1, 2, 3, 4]), ExactMatrix.diag([5, 5, 6, 6]))
    rep = check_constructibility(P)
    assert not rep.passed and rep.cond2_invertible_row is None


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("b", DEFAULT_B_SAMPLES)
def test_criteria_and_closure_agree(n, b):
    P = build_pencil(FamilyParams(n, b))
    assert check_constructibility(P, b).passed
    assert generated_algebra_dim([P.H, P.K]).saturated
