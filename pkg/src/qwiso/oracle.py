"""Brute-force ground truths for tests and cross-checks.

Nothing here is meant to be fast or scalable; these routines exist to
falsify the structured paths at small sizes, behind explicit size guards.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import ShapeMismatch, TooLarge
from .spectral import PolynomialCoefficients, poly_from_roots
from .walk import WalkOperator

MAX_ORACLE_DIM = 1000
MAX_PERMUTATION_VERTICES = 8


def char_poly_oracle(u: WalkOperator) -> PolynomialCoefficients:
    """Characteristic polynomial from a dense eigendecomposition of the full operator.

    Independent of the block route: the whole p*k x p*k matrix is
    eigendecomposed in one shot. The operator is real by construction, so
    the real solver is used and returns exactly conjugate-symmetric
    eigenvalues.
    """
    dim = u.ordering.dim
    if dim > MAX_ORACLE_DIM:
        raise TooLarge(f"oracle limited to dimension {MAX_ORACLE_DIM}, got {dim}")
    eigs = np.linalg.eigvals(u.matrix.real)
    return poly_from_roots(eigs, imag_tol=1e-7)


def brute_force_isomorphic(a1: np.ndarray, a2: np.ndarray) -> bool:
    """Exhaustive vertex-permutation isomorphism test for tiny graphs.

    Full n! scan with a degree-sequence prune up front; n <= 8 keeps this
    instant. Inputs must be square symmetric 0/1 matrices of equal shape.
    """
    a1 = np.asarray(a1)
    a2 = np.asarray(a2)
    if a1.shape != a2.shape or a1.ndim != 2 or a1.shape[0] != a1.shape[1]:
        raise ShapeMismatch(f"incompatible shapes {a1.shape} and {a2.shape}")
    if not (np.array_equal(a1, a1.T) and np.array_equal(a2, a2.T)):
        raise ShapeMismatch("adjacency matrices must be symmetric")
    n = a1.shape[0]
    if n > MAX_PERMUTATION_VERTICES:
        raise TooLarge(
            f"permutation search limited to {MAX_PERMUTATION_VERTICES} vertices, got {n}"
        )
    if sorted(a1.sum(axis=0)) != sorted(a2.sum(axis=0)):
        return False
    for perm in permutations(range(n)):
        perm = np.asarray(perm)
        if np.array_equal(a1[np.ix_(perm, perm)], a2):
            return True
    return False
