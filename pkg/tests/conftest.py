"""Shared randomized-spec builders and session-scoped corpora.

The acceptance suite reuses one 200-spec corpus (and its reports) across
criteria, so the expensive block computations run once."""

import random
from typing import List, Optional

import pytest

from hmjoin import Graph, IndexingMap, JoinSpec, block_charpoly


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_indexing(rng: random.Random, n: int, m: int,
                    partial: bool = True) -> IndexingMap:
    choices: List[Optional[int]] = list(range(1, m + 1))
    if partial:
        choices = [None] + choices
    return IndexingMap([rng.choice(choices) for _ in range(n)], m)


def random_spec(rng: random.Random, kmax: int = 4, nmax: int = 6,
                mmax: int = 4) -> JoinSpec:
    k = rng.randint(1, kmax)
    host = random_graph(rng, k)
    m = rng.randint(1, mmax)
    factors = [random_graph(rng, rng.randint(1, nmax)) for _ in range(k)]
    indexing = [random_indexing(rng, g.n, m) for g in factors]
    return JoinSpec(host, factors, m, indexing)


def lattice_srg16() -> Graph:
    """4x4 rook-move graph: srg(16, 6, 2, 2), the lattice member of the
    classical cospectral pair."""
    edges = set()
    for i in range(4):
        for j in range(4):
            for jj in range(j + 1, 4):
                edges.add((4 * i + j, 4 * i + jj))
            for ii in range(i + 1, 4):
                edges.add((4 * i + j, 4 * ii + j))
    return Graph(16, sorted(edges))


def exceptional_srg16() -> Graph:
    """The exceptional srg(16, 6, 2, 2): Z4 x Z4 with differences
    (1,0), (0,1), (1,1); cospectral with but not isomorphic to the
    lattice."""
    edges = set()
    for i in range(4):
        for j in range(4):
            for di, dj in [(1, 0), (0, 1), (1, 1)]:
                u = 4 * i + j
                v = 4 * ((i + di) % 4) + ((j + dj) % 4)
                edges.add((min(u, v), max(u, v)))
    return Graph(16, sorted(edges))


@pytest.fixture(scope="session")
def corpus_specs() -> List[JoinSpec]:
    rng = random.Random(20260814)
    return [random_spec(rng) for _ in range(200)]


@pytest.fixture(scope="session")
def corpus_reports(corpus_specs):
    return [block_charpoly(spec) for spec in corpus_specs]
