"""Block spectra, coefficient recovery, and characteristic polynomials.

The spectrum of every frequency block splits into +-1 eigenvalues plus at
most one conjugate pair e^{+-i*theta}; the real part of that pair is the
normalized Fourier coefficient of the connection set. Polynomials are
dense real coefficient vectors in ascending powers, monic by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blocks import FourierBlock
from .circulant import check_odd_prime
from .errors import (
    ClusteringAmbiguous,
    COutOfRange,
    DegenerateBlock,
    DegreeTooSmall,
    MoreThanOnePair,
    OddDegree,
    UnpairedEigenvalue,
)

DEFAULT_EIG_TOL = 1e-8
UNIT_CIRCLE_TOL = 1e-9


@dataclass(frozen=True)
class BlockSpectrum:
    """Classified eigenvalues of one block.

    theta and c are None for degenerate blocks (everything at +-1, which
    happens exactly at frequency 0).
    """

    j: int
    mult_plus_one: int
    mult_minus_one: int
    theta: float | None
    c: float | None


@dataclass(frozen=True)
class PolynomialCoefficients:
    """Monic real polynomial as an ascending-power coefficient vector."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.coeffs, dtype=np.float64))
        object.__setattr__(self, "coeffs", arr)
        if arr.size < 1 or abs(arr[-1] - 1.0) > 1e-9:
            raise ValueError("coefficient vector must be monic (leading 1)")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "monic": True,
            "coeffs": [float(c) for c in self.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolynomialCoefficients):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )


def poly_relative_difference(a: PolynomialCoefficients, b: PolynomialCoefficients) -> float:
    """Largest coefficient gap scaled by the largest coefficient magnitude.

    Infinite when degrees differ; this is the comparison used everywhere a
    relative polynomial tolerance is specified.
    """
    if a.degree != b.degree:
        return float("inf")
    scale = max(np.max(np.abs(a.coeffs)), np.max(np.abs(b.coeffs)))
    return float(np.max(np.abs(a.coeffs - b.coeffs)) / scale)


def _tree_product(factors: list[np.ndarray]) -> np.ndarray:
    """Balanced pairwise convolution; order of the input list is preserved."""
    if not factors:
        return np.array([1.0])
    layer = [np.asarray(f, dtype=np.float64) for f in factors]
    while len(layer) > 1:
        nxt = [
            np.convolve(layer[i], layer[i + 1]) for i in range(0, len(layer) - 1, 2)
        ]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def _interleave(long: list[np.ndarray], short: list[np.ndarray]) -> list[np.ndarray]:
    """Spread the shorter factor list evenly through the longer one."""
    if len(long) < len(short):
        long, short = short, long
    if not short:
        return list(long)
    out: list[np.ndarray] = []
    step = len(long) / (len(short) + 1)
    si = 0
    for i, f in enumerate(long):
        out.append(f)
        while si < len(short) and i + 1 >= (si + 1) * step:
            out.append(short[si])
            si += 1
    out.extend(short[si:])
    return out


def poly_from_roots(roots: Sequence[complex], imag_tol: float = 1e-9) -> PolynomialCoefficients:
    """Monic real polynomial with the given conjugate-closed root multiset.

    Real coefficients are guaranteed structurally: off-axis roots are
    greedily matched with their conjugates (mismatch beyond imag_tol raises
    UnpairedEigenvalue) and each pair becomes a real quadratic. Real roots
    are paired outermost-with-outermost so that +1/-1 clusters combine into
    balanced (x^2 - 1)-like factors, and the two factor families are
    interleaved before a balanced tree product. Naive sequential products
    in an arbitrary root order build intermediate coefficients orders of
    magnitude above the final ones and lose the result to cancellation at
    high degree; this ordering keeps intermediates at the final scale.
    """
    arr = np.asarray(roots, dtype=np.complex128)
    axis_tol = max(imag_tol, 1e-12)
    real_roots = np.sort(arr[np.abs(arr.imag) <= axis_tol].real)
    upper = sorted(arr[arr.imag > axis_tol], key=np.angle)
    lower = list(arr[arr.imag < -axis_tol])
    if len(upper) != len(lower):
        raise UnpairedEigenvalue(
            f"{len(upper)} roots above the axis vs {len(lower)} below"
        )
    mixed: list[np.ndarray] = []
    i, j = 0, len(real_roots) - 1
    while i < j:
        a, b = real_roots[i], real_roots[j]
        mixed.append(np.array([a * b, -(a + b), 1.0]))
        i += 1
        j -= 1
    leftover = [np.array([-real_roots[i], 1.0])] if i == j else []
    conjugate: list[np.ndarray] = []
    for z in upper:
        gaps = [abs(np.conj(z) - w) for w in lower]
        m = int(np.argmin(gaps))
        if gaps[m] > max(1e-6, 10 * axis_tol):
            raise UnpairedEigenvalue(
                f"root {z} has no conjugate partner (best gap {gaps[m]:.3e})"
            )
        w = lower.pop(m)
        conjugate.append(np.array([abs(z) * abs(w), -(z.real + w.real), 1.0]))
    product = _tree_product(_interleave(mixed, conjugate) + leftover)
    # normalize away the rounding on the leading coefficient
    return PolynomialCoefficients(product / product[-1])


def block_spectrum(b: FourierBlock, tol_eig: float = DEFAULT_EIG_TOL) -> BlockSpectrum:
    """Classify the eigenvalues of one block.

    Eigenvalues within tol_eig of +1 or -1 are counted as such; the rest
    must form exactly one conjugate pair, whose mean real part gives c.
    UnpairedEigenvalue and MoreThanOnePair surface structural violations
    instead of silently dropping data.
    """
    eigs = np.linalg.eigvals(b.matrix)
    off_circle = float(np.max(np.abs(np.abs(eigs) - 1.0)))
    if off_circle > UNIT_CIRCLE_TOL:
        raise ValueError(
            f"block {b.j} is not unitary: eigenvalue off circle by {off_circle:.3e}"
        )
    near_plus = np.abs(eigs - 1.0) <= tol_eig
    near_minus = np.abs(eigs + 1.0) <= tol_eig
    rest = eigs[~near_plus & ~near_minus]
    mult_plus = int(near_plus.sum())
    mult_minus = int(near_minus.sum())
    if rest.size == 0:
        return BlockSpectrum(
            j=b.j, mult_plus_one=mult_plus, mult_minus_one=mult_minus,
            theta=None, c=None,
        )
    if rest.size % 2 != 0:
        raise UnpairedEigenvalue(
            f"block {b.j} has an odd number of off-axis eigenvalues: {rest}"
        )
    if rest.size > 2:
        raise MoreThanOnePair(
            f"block {b.j} has {rest.size} eigenvalues off +-1: {rest}"
        )
    z, w = rest
    if abs(np.conj(z) - w) > tol_eig:
        raise UnpairedEigenvalue(
            f"block {b.j}: {z} and {w} are not conjugate within {tol_eig:.0e}"
        )
    c = float((z.real + w.real) / 2.0)
    theta = float(np.arccos(np.clip(c, -1.0, 1.0)))
    return BlockSpectrum(
        j=b.j, mult_plus_one=mult_plus, mult_minus_one=mult_minus,
        theta=theta, c=c,
    )


def recover_c(b: FourierBlock, tol_eig: float = DEFAULT_EIG_TOL) -> float:
    """Normalized Fourier coefficient read off the block spectrum alone.

    Works for any block with exactly one conjugate pair off +-1, i.e. every
    nonzero frequency. The frequency-0 block is degenerate (its value is
    forced to 1 by regularity) and raises DegenerateBlock.
    """
    spectrum = block_spectrum(b, tol_eig=tol_eig)
    if spectrum.c is None:
        raise DegenerateBlock(
            f"block {b.j} has no eigenvalue off +-1; its coefficient is fixed "
            "to 1 by regularity"
        )
    return spectrum.c


def predicted_block_poly(c: float, k: int) -> PolynomialCoefficients:
    """Expand (x-1)^m (x+1)^m (x^2 - 2c x + 1) with m = (k-2)/2 by convolution."""
    if not isinstance(k, (int, np.integer)) or k < 4:
        raise DegreeTooSmall(f"block degree must be an integer >= 4, got {k}")
    if k % 2 != 0:
        raise OddDegree(f"block degree must be even, got {k}")
    if not -1.0 < c < 1.0:
        raise COutOfRange(f"c must lie strictly inside (-1, 1), got {c}")
    poly = np.array([1.0, -2.0 * float(c), 1.0])  # ascending x^2 - 2c x + 1
    for _ in range((k - 2) // 2):
        poly = np.convolve(poly, np.array([-1.0, 0.0, 1.0]))  # times (x^2 - 1)
    return PolynomialCoefficients(poly)


def global_char_poly(blocks: Sequence[FourierBlock], imag_tol: float = 1e-9) -> PolynomialCoefficients:
    """Product of the per-block characteristic polynomials.

    Each factor is built from that block's raw eigenvalues (no spectrum
    classification involved) and the factors are combined by a balanced
    tree of convolutions.
    """
    factors = [
        poly_from_roots(np.linalg.eigvals(b.matrix), imag_tol=imag_tol).coeffs
        for b in blocks
    ]
    product = _tree_product(factors)
    return PolynomialCoefficients(product / product[-1])


def _plus_minus_factor(mult_plus: int, mult_minus: int) -> np.ndarray:
    """(x-1)^m+ (x+1)^m- expanded as balanced (x^2-1) powers times leftovers."""
    shared = min(mult_plus, mult_minus)
    factors = [np.array([-1.0, 0.0, 1.0])] * shared
    factors += [np.array([-1.0, 1.0])] * (mult_plus - shared)
    factors += [np.array([1.0, 1.0])] * (mult_minus - shared)
    return _tree_product(factors)


def extract_c_multiset(
    poly: PolynomialCoefficients,
    k: int,
    p: int,
    radius: float = 1e-6,
) -> list[tuple[float, int]]:
    """Recover {(c, pair count)} for nonzero frequencies from the global polynomial.

    For a degree p*k walk polynomial of a prime-order circulant the +-1
    multiplicities are structurally fixed by (p, k): every nonzero
    frequency contributes (k-2)/2 of each sign and frequency 0 contributes
    k/2 + 1 and k/2 - 1. That known factor is divided out by least-squares
    deconvolution (a Toeplitz linear system), which is where any numerical
    headroom lives: companion-matrix roots of the full polynomial scatter
    around high-multiplicity roots far too widely to classify directly.
    The remaining degree 2(p-1) polynomial is rooted, real parts are merged
    by single-linkage with an adaptive scale, and cluster centroids are
    reported (the first-order scatter of a multiple root cancels in the
    mean). Raises ClusteringAmbiguous when the deconvolution residual shows
    the quadratic part has been lost below double precision (this happens
    once the +-1 binomial mass reaches ~1e16 times the quadratic part, at
    p >= 29 for the largest supported degrees), when roots stray off the
    unit circle, or when two cluster centers land within 10*radius.
    """
    p = check_odd_prime(p, minimum=3)
    if k < 2 or k % 2 != 0:
        raise ValueError(f"degree k must be even and >= 2, got {k}")
    if poly.degree != p * k:
        raise ValueError(
            f"polynomial degree {poly.degree} does not match p*k = {p * k}"
        )
    if radius <= 0:
        raise ValueError("radius must be positive")
    mult_plus = (p - 1) * (k - 2) // 2 + k // 2 + 1
    mult_minus = (p - 1) * (k - 2) // 2 + k // 2 - 1
    quad_degree = 2 * (p - 1)

    base = _plus_minus_factor(mult_plus, mult_minus)
    n_rows = poly.degree + 1
    system = np.zeros((n_rows, quad_degree + 1))
    for col in range(quad_degree + 1):
        system[col:col + base.size, col] = base
    rhs = poly.coeffs - system[:, quad_degree]  # monic: leading unknown is 1
    solution, *_ = np.linalg.lstsq(system[:, :quad_degree], rhs, rcond=None)
    quad = np.append(solution, 1.0)
    fit = system[:, :quad_degree] @ solution + system[:, quad_degree]
    residual = float(
        np.linalg.norm(fit - poly.coeffs) / np.linalg.norm(poly.coeffs)
    )
    if residual > 1e-6:
        raise ClusteringAmbiguous(
            f"deconvolution of the fixed +-1 factor leaves relative residual "
            f"{residual:.3e}; the quadratic part is not resolvable in double "
            "precision at this size"
        )

    roots = np.roots(quad[::-1])
    if roots.size and float(np.max(np.abs(np.abs(roots) - 1.0))) > 0.2:
        raise ClusteringAmbiguous("quadratic-part roots stray off the unit circle")
    parts = np.sort(roots.real)

    # merge scale: high-multiplicity roots scatter like residual^(1/mult),
    # capped well below the coefficient separation of supported instances
    scatter = max(residual, 1e-15) ** (2.0 / quad_degree)
    merge = max(radius, min(0.1, scatter))
    clusters: list[np.ndarray] = []
    start = 0
    for i in range(1, parts.size):
        if parts[i] - parts[i - 1] > merge:
            clusters.append(parts[start:i])
            start = i
    clusters.append(parts[start:])

    result: list[tuple[float, int]] = []
    for cluster in clusters:
        if cluster.size % 2 != 0:
            raise ClusteringAmbiguous(
                f"cluster near {cluster.mean():.6f} holds an odd number of roots"
            )
        result.append((float(cluster.mean()), cluster.size // 2))
    centers = [c for c, _ in result]
    for a, b in zip(centers, centers[1:]):
        if b - a < 10 * radius:
            raise ClusteringAmbiguous(
                f"cluster centers {a:.3e} and {b:.3e} are closer than 10*radius"
            )
    return result
