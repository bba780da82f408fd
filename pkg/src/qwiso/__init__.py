"""Coined quantum walk spectra of prime-order circulant graphs.

Build the walk operator of a circulant graph, block-diagonalize it over
the Fourier basis, read the connection set back off the block spectra, and
decide isomorphism both spectrally and through the multiplier test.
"""

from .blocks import (
    BlockDecomposition,
    FourierBlock,
    block_decompose,
    block_direct,
    dft_matrix,
    fourier_mode,
    mode_shift_pairing,
    shift_block,
    uniform_coin_state,
)
from .circulant import (
    CirculantGraph,
    ConnectionSet,
    SrgParameters,
    adjacency_matrix,
    fourier_coefficient,
    fourier_coefficients,
    is_prime,
    make_connection_set,
    paley_connection_set,
    paley_graph,
    srg_parameters,
)
from .oracle import brute_force_isomorphic, char_poly_oracle
from .recovery import (
    IsoVerdict,
    RecoveryReport,
    decide_isomorphism,
    full_pipeline_from_spectra,
    recover_connection_set,
    turner_isomorphic,
    walk_char_poly,
)
from .spectral import (
    BlockSpectrum,
    PolynomialCoefficients,
    block_spectrum,
    extract_c_multiset,
    global_char_poly,
    poly_from_roots,
    poly_relative_difference,
    predicted_block_poly,
    recover_c,
)
from .walk import (
    BasisOrdering,
    WalkOperator,
    grover_coin,
    shift_operator,
    walk_operator,
)

__version__ = "0.1.0"

__all__ = [
    "BasisOrdering",
    "BlockDecomposition",
    "BlockSpectrum",
    "CirculantGraph",
    "ConnectionSet",
    "FourierBlock",
    "IsoVerdict",
    "PolynomialCoefficients",
    "RecoveryReport",
    "SrgParameters",
    "WalkOperator",
    "adjacency_matrix",
    "block_decompose",
    "block_direct",
    "block_spectrum",
    "brute_force_isomorphic",
    "char_poly_oracle",
    "decide_isomorphism",
    "dft_matrix",
    "extract_c_multiset",
    "fourier_coefficient",
    "fourier_coefficients",
    "fourier_mode",
    "full_pipeline_from_spectra",
    "global_char_poly",
    "grover_coin",
    "is_prime",
    "make_connection_set",
    "mode_shift_pairing",
    "paley_connection_set",
    "paley_graph",
    "poly_from_roots",
    "poly_relative_difference",
    "predicted_block_poly",
    "recover_c",
    "recover_connection_set",
    "shift_block",
    "shift_operator",
    "srg_parameters",
    "turner_isomorphic",
    "uniform_coin_state",
    "walk_char_poly",
    "walk_operator",
]
