"""Session fixtures: the shared random corpus and its decompositions.

Every corpus-wide check runs over the same 200 seeded graphs with 6 to 12
vertices and no isolated vertices, and the decomposition of each graph is
computed once and reused, so the acceptance suite times the real cost of a
single end-to-end pass.
"""

from __future__ import annotations

import time

import pytest

from conjcap import random_graph_corpus, split


@pytest.fixture(scope="session")
def corpus():
    return random_graph_corpus(200, 6, 12, seed=20250801)


@pytest.fixture(scope="session")
def corpus_splits(corpus):
    """(name, graph, decomposition) per corpus graph, plus the wall time."""
    started = time.perf_counter()
    rows = [(name, G, split(G, tol=1e-7, seed=0)) for name, G in corpus]
    elapsed = time.perf_counter() - started
    return rows, elapsed
