"""The coined walk operator on the vertex (x) coin space.

Basis convention, fixed once for the whole library: the composite state
(u, s) with vertex u in Z_p and coin s in S maps to index u*k + pos(s),
where pos is the position of s in the ascending ordering of S. All block
extraction downstream depends on this choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circulant import CirculantGraph
from .errors import DegreeTooSmall, OddDegree

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class BasisOrdering:
    """Bijection between [0, p*k) and pairs (u, s), u-major, coins ascending."""

    p: int
    coin_order: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.coin_order)

    @property
    def dim(self) -> int:
        return self.p * self.k

    def index(self, u: int, s: int) -> int:
        return (u % self.p) * self.k + self.coin_order.index(s)

    def pair(self, idx: int) -> tuple[int, int]:
        u, pos = divmod(idx, self.k)
        return u, self.coin_order[pos]


@dataclass(frozen=True)
class WalkOperator:
    """The p*k x p*k walk unitary together with its basis ordering.

    The matrix is stored complex for uniformity with its Fourier-conjugated
    form, but is real by construction (permutation times real reflection).
    """

    ordering: BasisOrdering
    matrix: np.ndarray


def grover_coin(k: int) -> np.ndarray:
    """The reflection (2/k) * ones - identity, as an exact real k x k matrix.

    Diagonal entries are 2/k - 1, off-diagonal entries 2/k. Eigenvalue +1
    has multiplicity 1 (uniform vector), -1 has multiplicity k - 1.
    """
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise DegreeTooSmall(f"coin dimension must be an integer >= 2, got {k}")
    if k % 2 != 0:
        raise OddDegree(f"degree must be even, got {k}")
    k = int(k)
    return (2.0 / k) * np.ones((k, k)) - np.eye(k)


def basis_ordering(g: CirculantGraph) -> BasisOrdering:
    return BasisOrdering(p=g.p, coin_order=g.connection_set.elements)


def _shift_perm(ordering: BasisOrdering) -> np.ndarray:
    """Index permutation sending (u, s) to (u + s, -s); an exact involution."""
    p, k, coins = ordering.p, ordering.k, ordering.coin_order
    pos = {s: i for i, s in enumerate(coins)}
    perm = np.empty(p * k, dtype=np.intp)
    for u in range(p):
        for i, s in enumerate(coins):
            perm[u * k + i] = ((u + s) % p) * k + pos[(p - s) % p]
    if not np.array_equal(perm[perm], np.arange(p * k)):
        raise AssertionError("shift permutation is not an involution")
    return perm


def shift_operator(g: CirculantGraph) -> np.ndarray:
    """Permutation matrix of (u, s) -> (u + s, -s) in the canonical ordering."""
    ordering = basis_ordering(g)
    perm = _shift_perm(ordering)
    n = ordering.dim
    mat = np.zeros((n, n))
    mat[perm, np.arange(n)] = 1.0
    return mat


def walk_operator(g: CirculantGraph) -> WalkOperator:
    """Shift times (identity (x) coin); real orthogonal, checked on build."""
    ordering = basis_ordering(g)
    coin = grover_coin(ordering.k)
    shifted = shift_operator(g) @ np.kron(np.eye(g.p), coin)
    defect = np.linalg.norm(shifted @ shifted.T - np.eye(ordering.dim))
    if defect > UNITARITY_TOL:
        raise AssertionError(f"walk operator failed unitarity check: {defect:.3e}")
    return WalkOperator(ordering=ordering, matrix=shifted.astype(np.complex128))
