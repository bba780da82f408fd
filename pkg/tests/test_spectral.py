"""Block spectra, the explicit block polynomial, and coefficient extraction."""

import math

import numpy as np
import pytest

import qwiso
from qwiso.errors import (
    ClusteringAmbiguous,
    COutOfRange,
    DegenerateBlock,
    DegreeTooSmall,
    OddDegree,
    UnpairedEigenvalue,
)

from conftest import PALEY_PRIMES


def test_block_spectrum_paley13_j1(pipeline):
    spectrum = qwiso.block_spectrum(pipeline(13).decomposition.blocks[1])
    assert spectrum.mult_plus_one == 2
    assert spectrum.mult_minus_one == 2
    assert abs(spectrum.c - 0.217129) <= 5e-7
    assert spectrum.c == pytest.approx((math.sqrt(13) - 1) / 12, abs=1e-12)
    assert spectrum.theta == pytest.approx(math.acos(spectrum.c), abs=1e-12)


def test_block_spectrum_paley13_j2(pipeline):
    spectrum = qwiso.block_spectrum(pipeline(13).decomposition.blocks[2])
    assert abs(spectrum.c - (-0.383796)) <= 5e-7


def test_block_spectrum_paley13_j0_degenerate(pipeline):
    spectrum = qwiso.block_spectrum(pipeline(13).decomposition.blocks[0])
    assert spectrum.theta is None and spectrum.c is None
    assert spectrum.mult_plus_one == 4
    assert spectrum.mult_minus_one == 2


def test_block_spectrum_rejects_nonunitary():
    fake = qwiso.FourierBlock(j=0, matrix=2.0 * np.eye(4, dtype=complex))
    with pytest.raises(ValueError):
        qwiso.block_spectrum(fake)


@pytest.mark.parametrize("p", PALEY_PRIMES)
def test_block_multiplicities_and_recovery(pipeline, p):
    g = pipeline(p).graph
    k = g.k
    for j in range(1, p):
        block = pipeline(p).decomposition.blocks[j]
        spectrum = qwiso.block_spectrum(block)
        assert spectrum.mult_plus_one == (k - 2) // 2
        assert spectrum.mult_minus_one == (k - 2) // 2
        assert spectrum.theta is not None
        direct = qwiso.fourier_coefficient(g.connection_set, j) / k
        assert abs(qwiso.recover_c(block) - direct) <= 1e-9


@pytest.mark.parametrize("p", [13, 17])
def test_block_trace_decomposes_by_multiplicity(pipeline, p):
    for j in range(p):
        block = pipeline(p).decomposition.blocks[j]
        spectrum = qwiso.block_spectrum(block)
        expected = spectrum.mult_plus_one - spectrum.mult_minus_one
        if spectrum.c is not None:
            expected += 2 * spectrum.c
        assert np.trace(block.matrix) == pytest.approx(expected, abs=1e-9)


def test_recover_c_degenerate_block(pipeline):
    with pytest.raises(DegenerateBlock):
        qwiso.recover_c(pipeline(13).decomposition.blocks[0])


def test_recover_c_paley29_table_values(pipeline):
    values = {
        round(qwiso.recover_c(b), 4)
        for b in pipeline(29).decomposition.blocks[1:]
    }
    assert values == {-0.2280, 0.1566}


@pytest.mark.parametrize("p", PALEY_PRIMES)
def test_recover_c_closed_form(pipeline, p):
    k = pipeline(p).graph.k
    expected = {(math.sqrt(p) - 1) / (2 * k), (-math.sqrt(p) - 1) / (2 * k)}
    for block in pipeline(p).decomposition.blocks[1:]:
        c = qwiso.recover_c(block)
        assert min(abs(c - e) for e in expected) <= 1e-9


def test_predicted_block_poly_c0_k4():
    poly = qwiso.predicted_block_poly(0.0, 4)
    assert np.allclose(poly.coeffs, [-1.0, 0.0, 0.0, 0.0, 1.0], atol=0)


def test_predicted_block_poly_matches_root_product():
    c = 0.217129
    theta = math.acos(c)
    roots = [1, 1, -1, -1, complex(math.cos(theta), math.sin(theta)),
             complex(math.cos(theta), -math.sin(theta))]
    expected = np.poly(roots)[::-1].real  # independent expansion of the same roots
    poly = qwiso.predicted_block_poly(c, 6)
    assert np.max(np.abs(poly.coeffs - expected)) <= 1e-12
    assert poly.coeffs[0] == pytest.approx(1.0, abs=1e-12)  # root product


def test_predicted_block_poly_validation():
    with pytest.raises(COutOfRange):
        qwiso.predicted_block_poly(1.0, 6)
    with pytest.raises(COutOfRange):
        qwiso.predicted_block_poly(-1.5, 6)
    with pytest.raises(OddDegree):
        qwiso.predicted_block_poly(0.2, 5)
    with pytest.raises(DegreeTooSmall):
        qwiso.predicted_block_poly(0.2, 2)


@pytest.mark.parametrize("p", [13, 17])
def test_predicted_matches_spectral_block_poly(pipeline, p):
    k = pipeline(p).graph.k
    for j in range(1, p):
        block = pipeline(p).decomposition.blocks[j]
        predicted = qwiso.predicted_block_poly(qwiso.recover_c(block), k)
        actual = qwiso.poly_from_roots(np.linalg.eigvals(block.matrix))
        assert np.max(np.abs(predicted.coeffs - actual.coeffs)) <= 1e-8


def test_predicted_matches_spectral_paley13_j5(pipeline):
    block = pipeline(13).decomposition.blocks[5]
    predicted = qwiso.predicted_block_poly(qwiso.recover_c(block), 6)
    actual = qwiso.poly_from_roots(np.linalg.eigvals(block.matrix))
    assert np.max(np.abs(predicted.coeffs - actual.coeffs)) <= 1e-8


def test_poly_from_roots_quartic():
    poly = qwiso.poly_from_roots([1.0, -1.0, 1j, -1j])
    assert np.allclose(poly.coeffs, [-1.0, 0.0, 0.0, 0.0, 1.0], atol=1e-15)


def test_poly_from_roots_rejects_unpaired():
    with pytest.raises(UnpairedEigenvalue):
        qwiso.poly_from_roots([1j, 1.0])


def test_polynomial_coefficients_must_be_monic():
    with pytest.raises(ValueError):
        qwiso.PolynomialCoefficients(np.array([1.0, 2.0]))


def test_polynomial_json():
    poly = qwiso.predicted_block_poly(0.0, 4)
    data = poly.to_dict()
    assert data["degree"] == 4
    assert data["monic"] is True
    assert data["coeffs"] == [-1.0, 0.0, 0.0, 0.0, 1.0]


def test_global_char_poly_degrees(pipeline):
    poly = qwiso.global_char_poly(pipeline(13).decomposition.blocks)
    assert poly.degree == 78
    pentagon = qwiso.CirculantGraph(qwiso.make_connection_set(5, [1, 4]))
    blocks = qwiso.block_decompose(qwiso.walk_operator(pentagon)).blocks
    assert qwiso.global_char_poly(blocks).degree == 10


def test_global_char_poly_palindromic_up_to_determinant(pipeline):
    walk = pipeline(13).walk
    poly = qwiso.global_char_poly(pipeline(13).decomposition.blocks)
    det = np.linalg.det(walk.matrix.real)
    sign = 1.0 if det > 0 else -1.0
    scale = np.max(np.abs(poly.coeffs))
    flipped = sign * poly.coeffs[::-1]
    assert np.max(np.abs(poly.coeffs - flipped)) / scale <= 1e-9


def test_poly_relative_difference_infinite_for_degree_mismatch():
    a = qwiso.predicted_block_poly(0.0, 4)
    b = qwiso.predicted_block_poly(0.0, 6)
    assert qwiso.poly_relative_difference(a, b) == float("inf")


def test_extract_c_multiset_paley13(pipeline):
    poly = qwiso.global_char_poly(pipeline(13).decomposition.blocks)
    result = qwiso.extract_c_multiset(poly, 6, 13)
    assert [count for _, count in result] == [6, 6]
    low, high = result[0][0], result[1][0]
    assert abs(low - (-math.sqrt(13) - 1) / 12) <= 1e-6
    assert abs(high - (math.sqrt(13) - 1) / 12) <= 1e-6
    assert round(low, 6) == -0.383796
    assert round(high, 6) == 0.217129


def test_extract_c_multiset_paley17(pipeline):
    poly = qwiso.global_char_poly(pipeline(17).decomposition.blocks)
    result = qwiso.extract_c_multiset(poly, 8, 17)
    assert [(round(c, 4), n) for c, n in result] == [(-0.3202, 8), (0.1952, 8)]


def test_extract_c_multiset_pentagon():
    pentagon = qwiso.CirculantGraph(qwiso.make_connection_set(5, [1, 4]))
    blocks = qwiso.block_decompose(qwiso.walk_operator(pentagon)).blocks
    poly = qwiso.global_char_poly(blocks)
    result = qwiso.extract_c_multiset(poly, 2, 5)
    expected = sorted([math.cos(4 * math.pi / 5), math.cos(2 * math.pi / 5)])
    assert [count for _, count in result] == [2, 2]
    for (c, _), e in zip(result, expected):
        assert abs(c - e) <= 1e-8


def test_extract_c_multiset_validates_degree(pipeline):
    poly = qwiso.global_char_poly(pipeline(13).decomposition.blocks)
    with pytest.raises(ValueError):
        qwiso.extract_c_multiset(poly, 6, 17)


def test_extract_c_multiset_ambiguity_at_coarse_radius(pipeline):
    poly = qwiso.global_char_poly(pipeline(13).decomposition.blocks)
    with pytest.raises(ClusteringAmbiguous):
        qwiso.extract_c_multiset(poly, 6, 13, radius=0.07)


def test_extract_c_multiset_beyond_double_precision(pipeline):
    # at p = 29 the fixed +-1 factor mass buries the quadratic part below
    # float64 resolution; the deconvolution residual must catch this
    poly = qwiso.global_char_poly(pipeline(29).decomposition.blocks)
    with pytest.raises(ClusteringAmbiguous):
        qwiso.extract_c_multiset(poly, 14, 29)
