"""Arithmetic over Z_p, connection sets, and circulant graphs.

A circulant graph on an odd prime number of vertices is defined by a
symmetric connection set S (0 not in S, S = -S mod p). Everything here is
exact integer or O(k) trigonometric work; no heavy linear algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    ImaginaryResidualTooLarge,
    NotCongruentOneModFour,
    NotPrime,
    NotSymmetric,
    ZeroInSet,
)

# Imaginary parts of Fourier coefficients are forced to vanish by S = -S;
# anything above this signals a broken connection set, not float noise.
FOURIER_IMAG_TOL = 1e-10


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (inputs are desk-scale)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_odd_prime(p: int, minimum: int = 5) -> int:
    """Validate that p is an odd prime with p >= minimum and return it.

    Graph constructions require p >= 5; the bare Fourier matrix admits
    p >= 3.
    """
    if not isinstance(p, (int, np.integer)):
        raise NotPrime(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if not is_prime(p) or p % 2 == 0 or p < minimum:
        raise NotPrime(f"modulus must be an odd prime >= {minimum}, got {p}")
    return p


@dataclass(frozen=True)
class ConnectionSet:
    """Symmetric subset of Z_p minus 0, stored as sorted representatives in [1, p-1].

    Equality is structural on this normal form. Instances are built through
    make_connection_set / paley_connection_set, which enforce the invariants.
    """

    p: int
    elements: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.elements)

    def multiplied(self, t: int) -> "ConnectionSet":
        """The image set t*S mod p, renormalized."""
        return make_connection_set(self.p, [(t * s) % self.p for s in self.elements])

    def to_dict(self) -> dict:
        return {"p": self.p, "elements": list(self.elements)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(data: dict) -> "ConnectionSet":
        return make_connection_set(data["p"], data["elements"])

    @staticmethod
    def from_json(text: str) -> "ConnectionSet":
        data = json.loads(text)
        if not isinstance(data, dict) or "p" not in data or "elements" not in data:
            raise ValueError("expected an object with 'p' and 'elements' keys")
        return ConnectionSet.from_dict(data)


def make_connection_set(p: int, elements: Iterable[int]) -> ConnectionSet:
    """Normalize and validate a connection set over Z_p.

    Elements are reduced mod p, deduplicated and sorted. Raises ZeroInSet if
    0 survives reduction and NotSymmetric (naming the offending element) if
    some s is present without p - s.
    """
    p = check_odd_prime(p, minimum=5)
    reduced = sorted({int(s) % p for s in elements})
    if not reduced:
        raise ValueError("connection set must be nonempty")
    if reduced[0] == 0:
        raise ZeroInSet(f"0 is not allowed in a connection set over Z_{p}")
    present = set(reduced)
    for s in reduced:
        if (p - s) % p not in present:
            raise NotSymmetric(f"element {s} lacks its negation {p - s} mod {p}")
    return ConnectionSet(p=p, elements=tuple(reduced))


def paley_connection_set(p: int) -> ConnectionSet:
    """The nonzero quadratic residues mod p, for primes p = 1 (mod 4).

    The residues form a symmetric set of size (p-1)/2 exactly when -1 is a
    square, i.e. p = 1 (mod 4).
    """
    p = check_odd_prime(p, minimum=5)
    if p % 4 != 1:
        raise NotCongruentOneModFour(f"need p = 1 (mod 4), got p = {p}")
    residues = sorted({(x * x) % p for x in range(1, p)})
    return make_connection_set(p, residues)


@dataclass(frozen=True)
class CirculantGraph:
    """Graph on Z_p with u ~ v whenever v - u lies in the connection set."""

    connection_set: ConnectionSet

    @property
    def p(self) -> int:
        return self.connection_set.p

    @property
    def k(self) -> int:
        return self.connection_set.k


def paley_graph(p: int) -> CirculantGraph:
    return CirculantGraph(paley_connection_set(p))


def adjacency_matrix(g: CirculantGraph) -> np.ndarray:
    """Dense 0/1 adjacency matrix, A[u, v] = 1 iff (v - u) mod p is in S."""
    p = g.p
    idx = np.arange(p)
    diff = (idx[None, :] - idx[:, None]) % p
    return np.isin(diff, g.connection_set.elements).astype(np.int64)


@dataclass(frozen=True)
class SrgParameters:
    """Parameters (n, k, lam, mu) of a strongly regular graph."""

    n: int
    k: int
    lam: int
    mu: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)


def srg_parameters(g: CirculantGraph) -> SrgParameters | None:
    """Parameters (p, k, lam, mu) if g is strongly regular, else None.

    Checked through the exact integer identity
    A^2 = k*I + lam*A + mu*(J - I - A): lam and mu are read off one adjacent
    and one non-adjacent pair, then the identity is verified entrywise. No
    floating point is involved.
    """
    p, k = g.p, g.k
    a = adjacency_matrix(g)
    a2 = a @ a
    if k == p - 1:
        # complete graph: no non-adjacent pair exists, mu is undefined
        return None
    s0 = g.connection_set.elements[0]
    lam = int(a2[0, s0])
    non_neighbors = [v for v in range(1, p) if a[0, v] == 0]
    mu = int(a2[0, non_neighbors[0]])
    eye = np.eye(p, dtype=np.int64)
    jmat = np.ones((p, p), dtype=np.int64)
    expected = k * eye + lam * a + mu * (jmat - eye - a)
    if not np.array_equal(a2, expected):
        return None
    return SrgParameters(n=p, k=k, lam=lam, mu=mu)


def fourier_coefficient(s: ConnectionSet, j: int) -> float:
    """The adjacency eigenvalue at frequency j: sum of cos(2*pi*j*s/p) over S.

    The companion sine sum must vanish (S = -S); its residual is checked
    against FOURIER_IMAG_TOL and then discarded.
    """
    p = s.p
    if not 0 <= j <= p - 1:
        raise ValueError(f"frequency j must lie in [0, {p - 1}], got {j}")
    angles = 2.0 * np.pi * ((j * np.asarray(s.elements)) % p) / p
    real = float(np.cos(angles).sum())
    imag = float(np.sin(angles).sum())
    if abs(imag) > FOURIER_IMAG_TOL:
        raise ImaginaryResidualTooLarge(
            f"sine sum {imag:.3e} at j={j} exceeds {FOURIER_IMAG_TOL:.0e}; "
            "connection set is not symmetric"
        )
    return real


def fourier_coefficients(s: ConnectionSet) -> np.ndarray:
    """All p coefficients as a vector, index j = 0..p-1."""
    return np.array([fourier_coefficient(s, j) for j in range(s.p)])
