"""Exact arithmetic over Q and Q(i): scalars, dense matrices, polynomials."""

from .gaussian import GaussianRational, I, as_fraction
from .matrix import (
    DimensionError,
    ExactMatrix,
    char_poly,
    char_poly_coeffs,
    det,
    evaluate_poly_at_matrix,
    fraction_matrix,
    hessenberg,
    kronecker,
    principal_minor_sum,
    principal_submatrix,
    rank,
)
from .poly import (
    RationalPolynomial,
    SquarefreeDecomposition,
    discriminant,
    gcd_poly,
    poly_sqrt,
    resultant,
    squarefree_decompose,
    sylvester_matrix,
    xgcd_poly,
)
from .serialize import (
    fraction_str,
    matrix_from_dict,
    matrix_to_dict,
    poly_from_dict,
    poly_to_dict,
)

__all__ = [
    "DimensionError",
    "ExactMatrix",
    "GaussianRational",
    "I",
    "RationalPolynomial",
    "SquarefreeDecomposition",
    "as_fraction",
    "char_poly",
    "char_poly_coeffs",
    "det",
    "discriminant",
    "evaluate_poly_at_matrix",
    "fraction_matrix",
    "fraction_str",
    "gcd_poly",
    "hessenberg",
    "kronecker",
    "matrix_from_dict",
    "matrix_to_dict",
    "poly_from_dict",
    "poly_sqrt",
    "poly_to_dict",
    "principal_minor_sum",
    "principal_submatrix",
    "rank",
    "resultant",
    "squarefree_decompose",
    "sylvester_matrix",
    "xgcd_poly",
]
