"""Shared fixtures: cached pipeline builds for the four reference graphs."""

from collections import namedtuple
from functools import lru_cache

import pytest

import qwiso

Pipeline = namedtuple("Pipeline", "graph walk decomposition")

PALEY_PRIMES = (13, 17, 29, 41)


@lru_cache(maxsize=None)
def _build(p: int) -> Pipeline:
    graph = qwiso.paley_graph(p)
    walk = qwiso.walk_operator(graph)
    decomposition = qwiso.block_decompose(walk)
    return Pipeline(graph, walk, decomposition)


@pytest.fixture(scope="session")
def pipeline():
    """Callable p -> Pipeline, built once per session."""
    return _build
