"""Connection-set recovery from spectra and the two isomorphism routes.

The inverse Fourier formula turns the p recovered coefficients back into
the 0/1 indicator of the connection set. Isomorphism is decided twice, by
comparing walk polynomials and by scanning for a multiplier t with
t*S1 = S2; their agreement on strongly regular inputs is the content of
the completeness claim, so both routes always run and are cross-checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blocks import block_decompose
from .circulant import CirculantGraph, ConnectionSet, make_connection_set
from .errors import (
    DegreeMismatch,
    ModulusMismatch,
    NonzeroAtOrigin,
    RecoveredSetMismatch,
    RoundingResidualTooLarge,
    WrongCardinality,
)
from .spectral import (
    DEFAULT_EIG_TOL,
    global_char_poly,
    poly_relative_difference,
    recover_c,
)
from .walk import walk_operator

ROUNDING_TOL = 1e-6
POLY_REL_TOL = 1e-6


@dataclass(frozen=True)
class RecoveryReport:
    """Result of inverting the coefficient vector back to a connection set."""

    p: int
    k: int
    c_values: tuple[float, ...]
    recovered_set: ConnectionSet
    max_rounding_residual: float

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "c_values": [float(c) for c in self.c_values],
            "recovered_set": self.recovered_set.to_dict(),
            "max_rounding_residual": self.max_rounding_residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of the two isomorphism routes on one pair of graphs."""

    isomorphic: bool
    witness_multiplier: int | None
    spectral_equal: bool
    method_agreement: bool

    def to_dict(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "witness_multiplier": self.witness_multiplier,
            "spectral_equal": self.spectral_equal,
            "method_agreement": self.method_agreement,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def recover_connection_set(
    c_values: Sequence[float],
    p: int,
    k: int,
    residual_tol: float = ROUNDING_TOL,
) -> RecoveryReport:
    """Invert normalized coefficients to the set indicator and round to {0, 1}.

    The indicator at u is (1/p) * sum_j k*c_j*omega^(-j*u). Its value at the
    origin must round to 0 (checked first: NonzeroAtOrigin), every other
    value must sit within residual_tol of 0 or 1 (RoundingResidualTooLarge),
    and exactly k entries may round to 1 (WrongCardinality).
    """
    c = np.asarray(c_values, dtype=np.float64)
    if c.size != p:
        raise ValueError(f"need {p} coefficient values, got {c.size}")
    if abs(c[0] - 1.0) > residual_tol:
        raise ValueError(f"c_values[0] must be 1 (regularity), got {c[0]!r}")
    if np.max(np.abs(c)) > 1.0 + residual_tol:
        raise ValueError("all coefficient values must satisfy |c| <= 1")
    idx = np.arange(p)
    phases = np.exp(-2j * np.pi * np.outer(idx, idx) / p)
    indicator = phases @ (k * c) / p
    distance = np.minimum(np.abs(indicator), np.abs(indicator - 1.0))
    if abs(indicator[0]) > residual_tol:
        raise NonzeroAtOrigin(
            f"indicator at u=0 is {indicator[0]:.6g}, expected 0"
        )
    worst = int(np.argmax(distance))
    if distance[worst] > residual_tol:
        raise RoundingResidualTooLarge(
            f"indicator at u={worst} is {indicator[worst]:.6g}, "
            f"not within {residual_tol:.0e} of 0 or 1"
        )
    ones = [int(u) for u in range(p) if abs(indicator[u] - 1.0) <= residual_tol]
    if len(ones) != k:
        raise WrongCardinality(f"rounded set has {len(ones)} elements, expected {k}")
    recovered = make_connection_set(p, ones)
    return RecoveryReport(
        p=p,
        k=k,
        c_values=tuple(float(x) for x in c),
        recovered_set=recovered,
        max_rounding_residual=float(np.max(distance)),
    )


def turner_isomorphic(s1: ConnectionSet, s2: ConnectionSet) -> int | None:
    """Smallest t in [1, p-1] with t*S1 = S2 mod p, or None.

    At prime order such a multiplier exists exactly when the two circulant
    graphs are isomorphic. Mismatched moduli or set sizes are reported as
    distinct errors rather than folded into the negative answer.
    """
    if s1.p != s2.p:
        raise ModulusMismatch(f"moduli differ: {s1.p} vs {s2.p}")
    if s1.k != s2.k:
        raise DegreeMismatch(f"set sizes differ: {s1.k} vs {s2.k}")
    target = frozenset(s2.elements)
    for t in range(1, s1.p):
        if frozenset((t * s) % s1.p for s in s1.elements) == target:
            return t
    return None


def walk_char_poly(g: CirculantGraph):
    """Global walk polynomial of a graph via its frequency blocks."""
    return global_char_poly(block_decompose(walk_operator(g)).blocks)


def decide_isomorphism(
    g1: CirculantGraph,
    g2: CirculantGraph,
    rel_tol: float = POLY_REL_TOL,
) -> IsoVerdict:
    """Run both isomorphism routes and record whether they agree.

    The verdict's isomorphic flag is the multiplier route (exact at prime
    order); spectral_equal compares global walk polynomials at rel_tol
    scaled by the largest coefficient. For strongly regular inputs of
    degree >= 6 the two must agree; for other inputs disagreement is data,
    not an error.
    """
    if g1.p != g2.p:
        raise ModulusMismatch(f"moduli differ: {g1.p} vs {g2.p}")
    if g1.k == g2.k:
        witness = turner_isomorphic(g1.connection_set, g2.connection_set)
        spectral_equal = (
            poly_relative_difference(walk_char_poly(g1), walk_char_poly(g2))
            <= rel_tol
        )
    else:
        # different degrees: trivially non-isomorphic, polynomials of
        # different degree
        witness = None
        spectral_equal = False
    isomorphic = witness is not None
    return IsoVerdict(
        isomorphic=isomorphic,
        witness_multiplier=witness,
        spectral_equal=spectral_equal,
        method_agreement=(spectral_equal == isomorphic),
    )


def full_pipeline_from_spectra(
    g: CirculantGraph,
    tol_eig: float = DEFAULT_EIG_TOL,
) -> RecoveryReport:
    """Walk operator -> blocks -> per-frequency coefficients -> set recovery.

    The frequency-0 coefficient is set to 1 by regularity instead of being
    read from the degenerate block. The recovered set must equal the input
    set exactly; a mismatch falsifies the pipeline on this instance and
    raises RecoveredSetMismatch.
    """
    decomposition = block_decompose(walk_operator(g))
    c_values = [1.0]
    c_values += [
        recover_c(decomposition.blocks[j], tol_eig=tol_eig) for j in range(1, g.p)
    ]
    report = recover_connection_set(c_values, g.p, g.k)
    if report.recovered_set != g.connection_set:
        raise RecoveredSetMismatch(
            f"recovered {report.recovered_set.elements}, "
            f"expected {g.connection_set.elements}"
        )
    return report
