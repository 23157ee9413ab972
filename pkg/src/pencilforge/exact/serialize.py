"""JSON exchange format for matrices and polynomials.

Matrix: {"rows": r, "cols": c, "entries": [[re_num, re_den, im_num, im_den], ...]}
row-major, every integer a decimal string.  Polynomial: {"coeffs": [[num, den], ...]}
lowest degree first.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .matrix import DimensionError, ExactMatrix
from .poly import RationalPolynomial


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_to_dict(m: ExactMatrix) -> dict:
    entries = []
    for z in m.entries():
        entries.append([str(z.re.numerator), str(z.re.denominator), str(z.im.numerator), str(z.im.denominator)])
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def matrix_from_dict(d: dict) -> ExactMatrix:
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    if len(entries) != rows * cols:
        raise DimensionError(f"expected {rows * cols} entries, found {len(entries)}")
    re = [[None] * cols for _ in range(rows)]
    im = [[None] * cols for _ in range(rows)]
    for k, e in enumerate(entries):
        if len(e) != 4:
            raise ValueError(f"entry {k} must have four integer strings")
        i, j = divmod(k, cols)
        re[i][j] = Fraction(int(e[0]), int(e[1]))
        im[i][j] = Fraction(int(e[2]), int(e[3]))
    return ExactMatrix._from_parts(re, im)


def poly_to_dict(p: RationalPolynomial) -> dict:
    return {"coeffs": [[str(c.numerator), str(c.denominator)] for c in p.coeffs]}


def poly_from_dict(d: dict) -> RationalPolynomial:
    return RationalPolynomial(Fraction(int(n), int(den)) for n, den in d["coeffs"])


def dump_matrix(m: ExactMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_dict(m), fh)


def load_matrix(path) -> ExactMatrix:
    with open(path) as fh:
        return matrix_from_dict(json.load(fh))
