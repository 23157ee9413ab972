"""Does a set of hermitian matrices generate the full matrix algebra?

Two independent certificates: the dimension of the span of all words in the
generators, and the block-structure criteria for a pencil whose K is diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .exact import ExactMatrix
from .family import PencilPair


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AlgebraReport:
    dimension: int
    order: int
    saturated: bool
    generations: int


class _EchelonBasis:
    """Incremental row-echelon basis over Q; rows normalised to 1 at their pivot."""

    def __init__(self):
        self.rows = []  # (pivot, row)

    def insert(self, v: list) -> bool:
        v = list(v)
        for p, row in self.rows:
            c = v[p]
            if c:
                for k in range(p, len(v)):
                    if row[k]:
                        v[k] -= c * row[k]
        p = next((k for k, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = 1 / v[p]
        self.rows.append((p, [x * inv if x else x for x in v]))
        return True

    def __len__(self):
        return len(self.rows)


def _to_mpq_table(m: ExactMatrix):
    re = [[mpq(x.numerator, x.denominator) for x in row] for row in m.real_part().real_rows()]
    if m.is_real:
        return re, None
    im = [[mpq(x.numerator, x.denominator) for x in row] for row in m.imag_part().real_rows()]
    return re, im


def _mul(a, b):
    bt = list(zip(*b))
    zero = mpq(0)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), zero) for col in bt])
    return out


def _cmul(a, b):
    (ar, ai), (br, bi) = a, b
    re = _mul(ar, br)
    if ai is not None and bi is not None:
        re = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(re, _mul(ai, bi))]
    im = None
    if ai is not None:
        im = _mul(ai, br)
    if bi is not None:
        part = _mul(ar, bi)
        im = part if im is None else [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(im, part)]
    return re, im


def _flatten(m, d, complex_mode):
    re, im = m
    flat_re = [x for row in re for x in row]
    if not complex_mode:
        return [flat_re]
    flat_im = [x for row in im for x in row] if im is not None else [mpq(0)] * (d * d)
    # a complex vector v spans the same real space as {v, i v}
    return [flat_re + flat_im, [-x for x in flat_im] + flat_re]


def generated_algebra_dim(generators, cap: int | None = None) -> AlgebraReport:
    """Dimension of the unital algebra generated by the given square matrices.

    Words are built breadth-first: each round multiplies every generator into
    the elements that raised the dimension in the previous round, which spans
    all words one letter longer.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    d = generators[0].rows
    if any(g.shape != (d, d) for g in generators):
        raise ValueError("generators must be square matrices of one common order")
    cap = d * d if cap is None else cap
    if cap < d * d:
        raise ValueError("cap must be at least d^2")
    complex_mode = not all(g.is_real for g in generators)
    gens = [_to_mpq_table(g) for g in generators]
    basis = _EchelonBasis()

    def add(m) -> bool:
        grew = False
        for v in _flatten(m, d, complex_mode):
            grew = basis.insert(v) or grew
        if len(basis) > (2 if complex_mode else 1) * cap:
            raise CapExceeded("span closure exceeded its dimension cap")
        return grew

    identity = ([[mpq(int(i == j)) for j in range(d)] for i in range(d)], None)
    add(identity)
    frontier = [g for g in gens if add(g)]
    rounds = 1
    full = (2 if complex_mode else 1) * d * d
    while frontier and len(basis) < full:
        rounds += 1
        new = []
        for w in frontier:
            for g in gens:
                prod = _cmul(g, w)
                if add(prod):
                    new.append(prod)
        frontier = new
    dim = len(basis) // (2 if complex_mode else 1)
    return AlgebraReport(dimension=dim, order=d, saturated=dim == d * d, generations=rounds)


@dataclass(frozen=True)
class CriteriaReport:
    cond1_multiplicity_ok: bool
    cond2_invertible_row: int | None
    cond3_noncommuting_pair: tuple | None
    excluded_b_values: tuple = ()
    commutator: ExactMatrix | None = None

    @property
    def passed(self) -> bool:
        return self.cond1_multiplicity_ok and self.cond2_invertible_row is not None \
            and self.cond3_noncommuting_pair is not None


def _block(m: ExactMatrix, i: int, j: int) -> ExactMatrix:
    return m.block(i, j, 2)


def _det2(b: ExactMatrix):
    return b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]


def block_pair_commutator(H: ExactMatrix, row: int, i: int, j: int) -> ExactMatrix:
    """[H_ri H_ri*, H_rj H_rj*] for 2x2 blocks of H (0-based block indices)."""
    a = _block(H, row, i)
    b = _block(H, row, j)
    return (a @ a.H).commutator(b @ b.H)


def k_multiplicity_ok(K: ExactMatrix) -> bool:
    """K diagonal, every eigenvalue of multiplicity <= 2, equal entries consecutive."""
    if not K.is_diagonal():
        return False
    diag = K.diagonal()
    seen = set()
    k = 0
    while k < len(diag):
        run = 1
        while k + run < len(diag) and diag[k + run] == diag[k]:
            run += 1
        if run > 2 or diag[k] in seen:
            return False
        seen.add(diag[k])
        k += run
    return True


def check_constructibility(P: PencilPair, b=None) -> CriteriaReport:
    """Check the three block criteria; block rows are scanned top to bottom."""
    H, K = P.H, P.K
    if H.rows % 2:
        raise ValueError("criteria need an even order")
    nblocks = H.rows // 2
    cond1 = k_multiplicity_ok(K)
    row_used = None
    singular_seen = False
    for r in range(nblocks):
        if all(_det2(_block(H, r, j)) for j in range(nblocks)):
            row_used = r
            break
        singular_seen = True
    pair = None
    comm = None
    if row_used is not None:
        for i in range(nblocks):
            for j in range(i + 1, nblocks):
                c = block_pair_commutator(H, row_used, i, j)
                if not c.is_zero():
                    pair, comm = (i, j), c
                    break
            if pair:
                break
    excluded = (Fraction(b),) if (singular_seen and b is not None) else ()
    return CriteriaReport(cond1, row_used, pair, excluded, comm)
