"""Fourier conjugation of the walk operator into per-frequency blocks.

Conjugating by F (x) I_k turns the walk operator into p independent k x k
unitaries, one per frequency j. Two constructions are provided on purpose:
block_decompose slices the conjugated matrix, block_direct assembles each
block entrywise from the twisted coin-negation rule. Their agreement is a
test target, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circulant import CirculantGraph, ConnectionSet, check_odd_prime
from .errors import ResidualTooLarge
from .walk import WalkOperator, grover_coin

# Hard failure threshold for off-block mass: two orders above the worst
# float noise seen on the largest supported instances, far below any
# ordering/convention bug (which lands at O(1)).
OFF_DIAGONAL_HARD_TOL = 1e-8


def dft_matrix(p: int) -> np.ndarray:
    """Unitary Fourier matrix with entry (j, u) = exp(2*pi*i*j*u/p)/sqrt(p).

    Exponents are reduced mod p before evaluating cos/sin, which keeps the
    phase error flat across the matrix.
    """
    p = check_odd_prime(p, minimum=3)
    idx = np.arange(p)
    expo = (np.outer(idx, idx)) % p
    return np.exp(2j * np.pi * expo / p) / np.sqrt(p)


@dataclass(frozen=True)
class FourierBlock:
    """One k x k unitary block at frequency j."""

    j: int
    matrix: np.ndarray


@dataclass(frozen=True)
class BlockDecomposition:
    """All p blocks plus the Frobenius norm of everything outside them."""

    blocks: tuple[FourierBlock, ...]
    off_diagonal_residual: float


def block_decompose(u: WalkOperator) -> BlockDecomposition:
    """Conjugate the walk operator by F (x) I_k and slice out the p blocks.

    Raises ResidualTooLarge when the off-block Frobenius mass exceeds the
    hard threshold, which would signal a basis-ordering or sign-convention
    bug rather than float noise.
    """
    p, k = u.ordering.p, u.ordering.k
    f_ext = np.kron(dft_matrix(p), np.eye(k))
    conjugated = f_ext @ u.matrix @ f_ext.conj().T
    stripped = conjugated.copy()
    blocks = []
    for j in range(p):
        sl = slice(j * k, (j + 1) * k)
        blocks.append(FourierBlock(j=j, matrix=conjugated[sl, sl].copy()))
        stripped[sl, sl] = 0.0
    residual = float(np.linalg.norm(stripped))
    if residual > OFF_DIAGONAL_HARD_TOL:
        raise ResidualTooLarge(
            f"off-block Frobenius norm {residual:.3e} exceeds "
            f"{OFF_DIAGONAL_HARD_TOL:.0e}"
        )
    return BlockDecomposition(blocks=tuple(blocks), off_diagonal_residual=residual)


def shift_block(g: CirculantGraph, j: int) -> np.ndarray:
    """The twisted coin negation at frequency j: column s carries omega^(j*s) in row -s.

    Squares to the identity for every j, since the phases at s and -s cancel.
    """
    p = g.p
    coins = g.connection_set.elements
    pos = {s: i for i, s in enumerate(coins)}
    k = len(coins)
    mat = np.zeros((k, k), dtype=np.complex128)
    for s in coins:
        mat[pos[(p - s) % p], pos[s]] = np.exp(2j * np.pi * ((j * s) % p) / p)
    return mat


def block_direct(g: CirculantGraph, j: int) -> FourierBlock:
    """Assemble the frequency-j block entrywise: twisted negation times coin."""
    if not 0 <= j <= g.p - 1:
        raise ValueError(f"frequency j must lie in [0, {g.p - 1}], got {j}")
    return FourierBlock(j=j, matrix=shift_block(g, j) @ grover_coin(g.k))


def fourier_mode(s: ConnectionSet, j: int) -> np.ndarray:
    """Unit vector with coin-s amplitude omega^(j*s)/sqrt(k), in coin order."""
    p, k = s.p, s.k
    expo = (j * np.asarray(s.elements)) % p
    return np.exp(2j * np.pi * expo / p) / np.sqrt(k)


def uniform_coin_state(k: int) -> np.ndarray:
    """The all-ones unit coin vector."""
    return np.ones(k) / np.sqrt(k)


def mode_shift_pairing(g: CirculantGraph, j: int) -> complex:
    """Unconjugated pairing of the frequency-j mode with its shifted image.

    Evaluates phi_j^T Shat_j phi_j, which telescopes to the normalized
    Fourier coefficient at j: the phase of column s cancels one mode factor
    and the reindexing s -> -s absorbs the other. Conjugating the left
    vector instead (the Hermitian form) triples the phase and yields the
    coefficient at 3j, a different quantity whenever 3 is not a square
    mod p; the unconjugated form is the one that reads off frequency j.
    """
    mode = fourier_mode(g.connection_set, j)
    return complex(mode @ shift_block(g, j) @ mode)
