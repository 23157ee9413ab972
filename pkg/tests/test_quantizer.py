from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pencilforge.exact import ExactMatrix, I, char_poly, poly_sqrt
from pencilforge.family import SPLIT_X, FamilyParams, build_pencil, split_y, quantised_b0, split_at_b0
from pencilforge.quantizer import (
    DEFAULT_B_SAMPLES,
    UnsupportedModulus,
    b_sweep,
    certify_spectrum,
    default_xy,
    gershgorin,
    probe_pairs,
    quantize,
    random_b_samples,
    random_quantisation_probe,
    shared_eigenvalue_bound,
    sym_poly_compare,
)

from conftest import fraction_rows

P4 = build_pencil(FamilyParams(4, 1))


def test_quantize_scalar():
    L = quantize(ExactMatrix([[1]]), ExactMatrix([[0]]), P4)
    assert L == P4.H


def test_quantize_split_block_form():
    q = FamilyParams(4).q
    L = quantize(SPLIT_X, split_y(q), P4)
    c = 1 / q ** 2
    assert L == ExactMatrix.from_blocks([[P4.H, P4.K.scale(c)], [P4.K.scale(c), P4.K]])
    assert L.is_hermitian() and L.rows == 16


def test_quantize_errors():
    with pytest.raises(ValueError):
        quantize(ExactMatrix([[0, 1], [0, 0]]), ExactMatrix.identity(2), P4)
    with pytest.raises(ValueError):
        quantize(ExactMatrix.identity(2), ExactMatrix.identity(3), P4)


def test_certify_examples():
    c = certify_spectrum(ExactMatrix.identity(4))
    assert c.simple_count == 0 and c.all_even and c.distinct_count == 1
    c = certify_spectrum(P4.at(2, -3))
    assert c.all_even and c.simple_count == 0
    c = certify_spectrum(quantised_b0(4))
    assert c.simple_count >= 6
    with pytest.raises(ValueError):
        certify_spectrum(ExactMatrix([[0, 1], [0, 0]]))


@given(fraction_rows(3), st.integers(1, 2))
def test_certificate_invariants(rows, copies):
    a = ExactMatrix(rows)
    h = a + a.T
    M = ExactMatrix.blockdiag(*([h] * copies))
    c = certify_spectrum(M)
    extra = sum(m * f.degree for f, m in c.decomposition.parts if m >= 2)
    assert c.simple_count + extra == M.rows
    assert c.all_even == (poly_sqrt(c.char) is not None)
    assert sum(c.multiplicity_table()) == sum(m * m * f.degree for f, m in c.decomposition.parts)


def test_shared_eigenvalue_bound():
    s = split_at_b0(4)
    assert shared_eigenvalue_bound(s.L1, s.L1) == 8
    assert shared_eigenvalue_bound(ExactMatrix.diag([1, 2]), ExactMatrix.diag([3, 4])) == 0
    assert shared_eigenvalue_bound(s.L1, s.L2) <= 5
    with pytest.raises(ValueError):
        shared_eigenvalue_bound(ExactMatrix.diag([1, 1]), ExactMatrix.diag([3, 4]))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_blockdiag_simple_count_identity(n):
    s = split_at_b0(n)
    shared = shared_eigenvalue_bound(s.L1, s.L2)
    c = certify_spectrum(ExactMatrix.blockdiag(s.L1, s.L2))
    assert c.simple_count == 2 * (2 * n - shared)
    assert c.simple_count >= 6


def test_gershgorin_diagonal():
    r = gershgorin(ExactMatrix.diag([1, 3, 2]))
    assert all(radius == 0 for _, radius in r.discs)
    assert r.all_disjoint and r.min_gap == 1
    assert not gershgorin(ExactMatrix.diag([1, 1])).all_disjoint


def test_gershgorin_complex_modulus():
    M = ExactMatrix([[10, 3 + 4 * I], [3 - 4 * I, -10]])
    assert gershgorin(M).discs == ((10, 5), (-10, 5))
    with pytest.raises(UnsupportedModulus):
        gershgorin(ExactMatrix([[10, 1 + I], [1 - I, -10]]))


def test_gershgorin_first_radius_of_H1():
    s = split_at_b0(4)
    assert gershgorin(s.H1).discs[0][1] == Fraction(4 * 3, 2)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_gershgorin_soundness(n):
    s = split_at_b0(n)
    for M in (s.H1, s.H2, s.L1, s.L2):
        assert gershgorin(M).all_disjoint
        assert certify_spectrum(M).simple_count == M.rows


def test_sym_poly_identical_inputs():
    s = split_at_b0(4)
    cmp = sym_poly_compare(s.L1, s.L1, 6)
    assert all(d == 0 for _, _, _, d in cmp.e_values)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_sym_poly_ladder(n):
    s = split_at_b0(n)
    cmp = sym_poly_compare(s.L1, s.L2, 4)
    assert [cmp.difference(k) for k in (1, 2, 3)] == [0, 0, 0]
    assert cmp.difference(4) == Fraction(-32) / s.q ** 4
    assert s.L1.trace() == s.L2.trace()


def test_sym_poly_n4_value_and_errors():
    s = split_at_b0(4)
    assert sym_poly_compare(s.L1, s.L2, 4).difference(4) == Fraction(-32, 2401)
    with pytest.raises(ValueError):
        sym_poly_compare(s.L1, s.L2, 0)
    with pytest.raises(ValueError):
        sym_poly_compare(s.L1, s.H1, 2)


def test_default_b_samples():
    assert len(set(DEFAULT_B_SAMPLES)) == 20
    assert 0 not in DEFAULT_B_SAMPLES
    assert Fraction(1, 1000) in DEFAULT_B_SAMPLES and Fraction(-1, 1000) in DEFAULT_B_SAMPLES


def test_sweep_rows():
    bs = [Fraction(0), Fraction(1), Fraction(-9, 4)]
    rows = b_sweep(4, bs)
    assert [r.b for r in rows] == bs
    assert all(r.error is None and r.simple_count >= 6 and r.all_even_unquantised for r in rows)


def test_sweep_records_row_errors():
    rows = b_sweep(4, [1], ExactMatrix([[0, 1], [0, 0]]), ExactMatrix.identity(2))
    assert rows[0].simple_count is None and "hermitian" in rows[0].error
    with pytest.raises(ValueError):
        b_sweep(3, [1])


def test_sweep_parallel_matches_serial():
    bs = DEFAULT_B_SAMPLES[:4]
    assert b_sweep(4, bs, workers=2) == b_sweep(4, bs, workers=1)


def test_random_b_samples_seeded():
    a = random_b_samples(10, seed=3)
    assert a == random_b_samples(10, seed=3)
    assert len(set(a)) == 10 and 0 not in a
    assert all(abs(b.numerator) <= 10 and b.denominator <= 10 for b in a)


def test_probe_controls():
    I2 = ExactMatrix.identity(2)
    assert poly_sqrt(char_poly(quantize(I2, I2, P4))) is not None
    X, Y = ExactMatrix.diag([1, 2]), ExactMatrix.diag([3, 5])
    assert poly_sqrt(char_poly(quantize(X, Y, P4))) is not None


def test_probe_pairs_do_not_commute():
    pairs = probe_pairs(10, seed=11)
    assert pairs == probe_pairs(10, seed=11)
    for X, Y in pairs:
        assert X.is_hermitian() and Y.is_hermitian()
        assert not X.commutator(Y).is_zero()


def test_probe_small_run():
    fraction, rows = random_quantisation_probe(P4, 6, seed=5)
    assert fraction == 1.0 and len(rows) == 6
    with pytest.raises(ValueError):
        random_quantisation_probe(P4, 0, seed=5)


def test_default_xy_values():
    X, Y = default_xy(4)
    assert X == SPLIT_X and Y == ExactMatrix([[0, Fraction(1, 49)], [Fraction(1, 49), 1]])
