"""Floating-point cross-check of exact multiplicity tables. Never used to certify."""

from __future__ import annotations

import numpy as np

from .exact import ExactMatrix

REL_TOL = 1e-8


def float_eigenvalues(M: ExactMatrix) -> np.ndarray:
    a = M.to_numpy()
    if M.is_hermitian():
        return np.sort(np.linalg.eigvalsh(a))
    return np.sort_complex(np.linalg.eigvals(a))


def cluster_multiplicities(eigs, rel_tol: float = REL_TOL) -> list[int]:
    """Group sorted real eigenvalues whose gap is within rel_tol * max(1, |value|)."""
    eigs = np.sort(np.real_if_close(np.asarray(eigs)).real)
    if eigs.size == 0:
        return []
    sizes = [1]
    for prev, cur in zip(eigs[:-1], eigs[1:]):
        scale = max(1.0, abs(prev), abs(cur))
        if cur - prev <= rel_tol * scale:
            sizes[-1] += 1
        else:
            sizes.append(1)
    table = []
    for s in sizes:
        table.extend([s] * s)
    return sorted(table)


def float_multiplicity_table(M: ExactMatrix, rel_tol: float = REL_TOL) -> list[int]:
    return cluster_multiplicities(float_eigenvalues(M), rel_tol)


def oracle_agrees(M: ExactMatrix, exact_table: list[int], rel_tol: float = REL_TOL) -> bool:
    return float_multiplicity_table(M, rel_tol) == sorted(exact_table)
