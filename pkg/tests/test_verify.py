"""Embedding verifier: acceptance of valid embeddings, violation
reporting, malformed input errors, and JSON round trips."""

import json

import pytest

from oracles import chimera_neighbor_map, embedding_oracle
from tembed.chimera import ChimeraGraph
from tembed.graphs import complete_bipartite, graph_from_edge_list
from tembed.templates import bte_template, template_as_embedding
from tembed.verify import (
    Embedding,
    OutOfRangeQubitError,
    UnknownVertexError,
    embedding_from_chains,
    embedding_from_json,
    embedding_to_json,
    load_embedding,
    save_embedding,
    verify,
)


@pytest.fixture()
def small_host():
    return ChimeraGraph(3, 3, 2)


@pytest.fixture()
def small_case(small_host):
    t = bte_template(small_host)
    g, emb = template_as_embedding(t)
    return g, small_host, emb


def test_valid_embedding_accepted(small_case):
    g, host, emb = small_case
    report = verify(g, host, emb)
    assert report.ok
    assert report.violations == ()
    assert report.kinds() == set()
    assert "ok" in report.summary()


def test_empty_chain_detected(small_case):
    g, host, emb = small_case
    chains = {v: emb.chain(v) for v in range(g.n)}
    chains[2] = ()
    report = verify(g, host, embedding_from_chains(g.n, host, chains))
    assert not report.ok
    assert "empty_chain" in report.kinds()
    assert any(v.kind == "empty_chain" and v.vertices == (2,) for v in report.violations)


def test_overlap_detected(small_case):
    g, host, emb = small_case
    chains = {v: emb.chain(v) for v in range(g.n)}
    chains[1] = chains[1] + (chains[0][0],)
    report = verify(g, host, embedding_from_chains(g.n, host, chains))
    assert not report.ok
    assert "overlap" in report.kinds()
    hit = [v for v in report.violations if v.kind == "overlap"]
    assert hit and hit[0].vertices == (0, 1) and hit[0].qubits == (chains[0][0],)


def test_disconnected_detected(small_host):
    # two far-apart qubits in one chain
    g = graph_from_edge_list(1, [])
    far = (small_host.vertex_index(0, 0, 0, 0), small_host.vertex_index(2, 2, 0, 0))
    report = verify(g, small_host, embedding_from_chains(1, small_host, {0: far}))
    assert not report.ok
    assert report.kinds() == {"disconnected"}


def test_missing_edge_detected(small_host):
    g = graph_from_edge_list(2, [(0, 1)])
    chains = {
        0: (small_host.vertex_index(0, 0, 0, 0),),
        1: (small_host.vertex_index(2, 2, 1, 1),),
    }
    report = verify(g, small_host, embedding_from_chains(2, small_host, chains))
    assert not report.ok
    assert report.kinds() == {"missing_edge"}
    assert any(v.vertices == (0, 1) for v in report.violations)


def test_all_violations_collected_together(small_case):
    g, host, emb = small_case
    chains = {v: emb.chain(v) for v in range(g.n)}
    chains[0] = ()
    chains[1] = chains[1] + (chains[2][0],)
    chains[3] = (chains[3][0], host.vertex_index(2, 2, 0, 1))
    report = verify(g, host, embedding_from_chains(g.n, host, chains))
    assert {"empty_chain", "overlap", "missing_edge"} <= report.kinds()


def test_malformed_inputs_raise(small_case):
    g, host, emb = small_case
    with pytest.raises(UnknownVertexError):
        verify(graph_from_edge_list(g.n + 1, []), host, emb)
    with pytest.raises(OutOfRangeQubitError):
        verify(g, ChimeraGraph(4, 4, 2), emb)
    with pytest.raises(OutOfRangeQubitError):
        oversized = embedding_from_chains(1, host, {0: (host.num_vertices,)})
        verify(graph_from_edge_list(1, []), host, oversized)
    with pytest.raises(UnknownVertexError):
        embedding_from_chains(1, host, {0: (0,), 5: (1,)})


def test_verify_matches_independent_oracle_on_mutations(small_case):
    g, host, emb = small_case
    adj = chimera_neighbor_map(host.m, host.n, host.l)
    base = {v: emb.chain(v) for v in range(g.n)}
    cases = []
    for v in range(g.n):
        for q in base[v]:
            mut = dict(base)
            mut[v] = tuple(x for x in mut[v] if x != q)
            cases.append(mut)
    for i in range(g.n):
        mut = dict(base)
        mut[i] = tuple(sorted(set(base[i]) | set(base[(i + 1) % g.n])))
        cases.append(mut)
    for mut in cases:
        report = verify(g, host, embedding_from_chains(g.n, host, mut))
        ok, kinds = embedding_oracle(g.n, g.edges, adj, mut)
        assert (report.ok, report.kinds()) == (ok, kinds)


def test_embedding_json_schema_and_round_trip(small_case, tmp_path):
    g, host, emb = small_case
    payload = json.loads(embedding_to_json(emb))
    assert payload["graph_n"] == g.n
    assert payload["chimera"] == {"M": host.m, "N": host.n, "L": host.l}
    assert set(payload["chains"]) == {str(v) for v in range(g.n)}
    back = embedding_from_json(embedding_to_json(emb))
    assert back == emb
    path = tmp_path / "emb.json"
    save_embedding(emb, path)
    assert load_embedding(path) == emb


def test_embedding_accessors(small_case):
    g, host, emb = small_case
    assert isinstance(emb, Embedding)
    assert emb.graph_n == g.n
    assert emb.used_qubits == sum(len(emb.chain(v)) for v in range(g.n))
    assert (emb.m, emb.n, emb.l) == (host.m, host.n, host.l)
