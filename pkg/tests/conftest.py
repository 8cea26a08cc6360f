"""Shared corpora.

Two graph collections drive the heavier suites: every non-isomorphic
graph on 1..7 vertices (the networkx atlas) and 200 seeded random graphs
on up to 10 vertices drawn through the package's own generator so the
corpus is reproducible from the seeds alone.
"""

import pytest

from tembed.generators import GenSpec, generate
from tembed.graphs import graph_from_edge_list

RANDOM_CORPUS_SIZE = 200
_RANDOM_PS = (0.2, 0.35, 0.5, 0.65, 0.8)


def build_atlas_corpus():
    nx = pytest.importorskip("networkx", reason="atlas corpus needs networkx")
    graphs = []
    for G in nx.generators.atlas.graph_atlas_g()[1:]:
        n = G.number_of_nodes()
        graphs.append(graph_from_edge_list(n, (tuple(sorted(e)) for e in G.edges())))
    return graphs


def build_random_corpus():
    graphs = []
    for k in range(RANDOM_CORPUS_SIZE):
        n = 4 + k % 7
        p = _RANDOM_PS[(k // 7) % len(_RANDOM_PS)]
        graphs.append(generate(GenSpec("ErdosRenyi", n, p, seed=900 + k)))
    return graphs


@pytest.fixture(scope="session")
def atlas_graphs():
    return build_atlas_corpus()


@pytest.fixture(scope="session")
def random_graphs():
    return build_random_corpus()


@pytest.fixture(scope="session")
def small_corpus(atlas_graphs, random_graphs):
    return atlas_graphs + random_graphs
