"""Brute-force oracles against the structured paths."""

from itertools import combinations

import numpy as np
import pytest

import qwiso
from qwiso.errors import ShapeMismatch, TooLarge

from conftest import PALEY_PRIMES


def _all_symmetric_sets(p):
    pairs = [(a, p - a) for a in range(1, (p - 1) // 2 + 1)]
    out = []
    for m in range(1, len(pairs) + 1):
        for combo in combinations(pairs, m):
            out.append(
                qwiso.make_connection_set(p, [x for pair in combo for x in pair])
            )
    return out


def test_char_poly_oracle_matches_blocks_paley13(pipeline):
    blocks_poly = qwiso.global_char_poly(pipeline(13).decomposition.blocks)
    oracle_poly = qwiso.char_poly_oracle(pipeline(13).walk)
    assert qwiso.poly_relative_difference(blocks_poly, oracle_poly) <= 1e-6


def test_char_poly_oracle_pentagon():
    # degree-2 case: the frequency-0 block contributes +1 twice and -1
    # zero times (k/2 + 1 = 2, k/2 - 1 = 0), and no other block touches
    # +-1, so +1 is a root while chi(-1) = 4 exactly
    pentagon = qwiso.CirculantGraph(qwiso.make_connection_set(5, [1, 4]))
    walk = qwiso.walk_operator(pentagon)
    poly = qwiso.char_poly_oracle(walk)
    assert poly.degree == 10
    at_plus = np.polyval(poly.coeffs[::-1], 1.0)
    at_minus = np.polyval(poly.coeffs[::-1], -1.0)
    assert abs(at_plus) <= 1e-9
    assert at_minus == pytest.approx(4.0, abs=1e-9)
    roots = np.roots(poly.coeffs[::-1])
    assert np.max(np.abs(np.abs(roots) - 1.0)) <= 1e-6


def test_char_poly_oracle_size_guard():
    ordering = qwiso.BasisOrdering(p=101, coin_order=tuple(range(1, 13)))
    fake = qwiso.WalkOperator(ordering=ordering, matrix=np.eye(2, dtype=complex))
    with pytest.raises(TooLarge):
        qwiso.char_poly_oracle(fake)


def test_brute_force_pentagon_relabeled():
    g = qwiso.CirculantGraph(qwiso.make_connection_set(5, [1, 4]))
    a = qwiso.adjacency_matrix(g)
    perm = [2, 0, 3, 1, 4]
    relabeled = a[np.ix_(perm, perm)]
    assert qwiso.brute_force_isomorphic(a, relabeled)


def test_brute_force_heptagon_multiplier_pair():
    a1 = qwiso.adjacency_matrix(
        qwiso.CirculantGraph(qwiso.make_connection_set(7, [1, 6]))
    )
    a2 = qwiso.adjacency_matrix(
        qwiso.CirculantGraph(qwiso.make_connection_set(7, [2, 5]))
    )
    assert qwiso.brute_force_isomorphic(a1, a2)
    assert qwiso.turner_isomorphic(
        qwiso.make_connection_set(7, [1, 6]), qwiso.make_connection_set(7, [2, 5])
    ) == 2


def test_brute_force_degree_mismatch_is_negative():
    a1 = qwiso.adjacency_matrix(
        qwiso.CirculantGraph(qwiso.make_connection_set(7, [1, 6]))
    )
    a2 = qwiso.adjacency_matrix(
        qwiso.CirculantGraph(qwiso.make_connection_set(7, [1, 2, 5, 6]))
    )
    assert not qwiso.brute_force_isomorphic(a1, a2)


def test_brute_force_guards():
    with pytest.raises(TooLarge):
        qwiso.brute_force_isomorphic(np.zeros((9, 9), int), np.zeros((9, 9), int))
    with pytest.raises(ShapeMismatch):
        qwiso.brute_force_isomorphic(np.zeros((3, 4), int), np.zeros((3, 4), int))
    with pytest.raises(ShapeMismatch):
        qwiso.brute_force_isomorphic(np.zeros((3, 3), int), np.zeros((4, 4), int))
    asym = np.zeros((3, 3), int)
    asym[0, 1] = 1
    with pytest.raises(ShapeMismatch):
        qwiso.brute_force_isomorphic(asym, asym)


@pytest.mark.parametrize("p", [5, 7])
def test_turner_agrees_with_permutation_search(p):
    sets = _all_symmetric_sets(p)
    for s1 in sets:
        a1 = qwiso.adjacency_matrix(qwiso.CirculantGraph(s1))
        for s2 in sets:
            a2 = qwiso.adjacency_matrix(qwiso.CirculantGraph(s2))
            brute = qwiso.brute_force_isomorphic(a1, a2)
            if s1.k != s2.k:
                assert not brute
                continue
            witness = qwiso.turner_isomorphic(s1, s2)
            assert brute == (witness is not None)


@pytest.mark.parametrize("p", PALEY_PRIMES)
def test_oracle_agreement_all_paley(pipeline, p):
    blocks_poly = qwiso.global_char_poly(pipeline(p).decomposition.blocks)
    oracle_poly = qwiso.char_poly_oracle(pipeline(p).walk)
    assert qwiso.poly_relative_difference(blocks_poly, oracle_poly) <= 1e-6
