"""Template minors of square Chimera graphs.

A template is a fixed family of disjoint connected chains ("groups" of
qubits) whose contraction yields a useful logical graph:

* bte: two sides of M*L chains each; contraction gives K_{ML,ML}. Side 1
  chain (r, i) runs the unit-i right qubits across row r; side 2 chain
  (c, i) runs the unit-i left qubits down column c. Uses all 2*M*M*L
  qubits; every chain has length M.
* qte: four sides U1..U4 with |U1| = |U4| = P*L and |U2| = |U3| = M*L,
  P = M/2. U1/U4 chains run right qubits across a full row (top and bottom
  halves); U2/U3 chains run left qubits down the top/bottom half of a
  column. U2 chain k touches U3 chain k through the vertical coupler
  between rows P-1 and P; contracting those pairs gives back bte.
* triad_clique: M*L L-shaped chains of M+1 qubits; chain (g, i) goes down
  the unit-i left qubits of column g from the diagonal cell, then left
  along the unit-i right qubits of row g to column 0. Contraction gives
  K_{ML}; an optional extra chain in the unused upper triangle gives
  K_{ML+1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .chimera import LEFT, RIGHT, ChimeraGraph
from .graphs import ProblemGraph, complete_bipartite, complete_graph, graph_from_edge_list
from .verify import Embedding, VerifyReport, verify

KINDS = ("bte", "qte", "triad_clique")


class NonSquareError(ValueError):
    pass


class OddGridError(ValueError):
    pass


class UnsupportedKindError(ValueError):
    pass


class ExtraChainError(RuntimeError):
    """The K_{ML+1} construction failed its verification gate."""


@dataclass(frozen=True)
class Template:
    kind: str
    m: int
    l: int
    partitions: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.partitions)

    @property
    def all_chains(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for part in self.partitions for c in part)

    def host(self) -> ChimeraGraph:
        return ChimeraGraph(self.m, self.m, self.l)


def _require_square(c: ChimeraGraph) -> None:
    if c.m != c.n:
        raise NonSquareError(f"templates need a square grid, got {c.m}x{c.n}")


def bte_template(c: ChimeraGraph) -> Template:
    _require_square(c)
    m, l = c.m, c.l
    side1 = tuple(
        tuple(sorted(c.vertex_index(r, col, RIGHT, i) for col in range(m)))
        for r in range(m)
        for i in range(l)
    )
    side2 = tuple(
        tuple(sorted(c.vertex_index(row, col, LEFT, i) for row in range(m)))
        for col in range(m)
        for i in range(l)
    )
    return Template("bte", m, l, (side1, side2))


def qte_template(c: ChimeraGraph) -> Template:
    _require_square(c)
    if c.m % 2:
        raise OddGridError(f"qte needs an even grid, got M={c.m}")
    m, l = c.m, c.l
    p = m // 2
    u1 = tuple(
        tuple(sorted(c.vertex_index(r, col, RIGHT, i) for col in range(m)))
        for r in range(p)
        for i in range(l)
    )
    u2 = tuple(
        tuple(sorted(c.vertex_index(row, col, LEFT, i) for row in range(p)))
        for col in range(m)
        for i in range(l)
    )
    u3 = tuple(
        tuple(sorted(c.vertex_index(row, col, LEFT, i) for row in range(p, m)))
        for col in range(m)
        for i in range(l)
    )
    u4 = tuple(
        tuple(sorted(c.vertex_index(r, col, RIGHT, i) for col in range(m)))
        for r in range(p, m)
        for i in range(l)
    )
    return Template("qte", m, l, (u1, u2, u3, u4))


def contract_qte(t: Template) -> Template:
    """Merge matched U2/U3 chains and concatenate U1/U4; equals bte_template."""
    if t.kind != "qte":
        raise UnsupportedKindError(f"cannot contract a {t.kind} template")
    u1, u2, u3, u4 = t.partitions
    side1 = u1 + u4
    side2 = tuple(tuple(sorted(a + b)) for a, b in zip(u2, u3))
    return Template("bte", t.m, t.l, (side1, side2))


def triad_clique_template(c: ChimeraGraph, plus_one: bool = False) -> Template:
    _require_square(c)
    m, l = c.m, c.l
    chains = []
    for g in range(m):
        for i in range(l):
            down = [c.vertex_index(r, g, LEFT, i) for r in range(g, m)]
            left = [c.vertex_index(g, col, RIGHT, i) for col in range(g + 1)]
            chains.append(tuple(sorted(down + left)))
    if plus_one:
        chains.append(_triad_extra_chain(c))
    t = Template("triad_clique", m, l, (tuple(chains),))
    if plus_one:
        g, emb = template_as_embedding(t)
        report = verify(g, c, emb)
        if not report.ok:
            raise ExtraChainError(report.summary())
    return t


def _triad_extra_chain(c: ChimeraGraph) -> tuple[int, ...]:
    """One connected chain through the unused upper triangle touching every
    L-shaped chain: the L left qubits of each superdiagonal cell reach the
    column chains from above, unit-0 right qubits span each upper row, a
    unit-0 left qubit at (g, g+2) stitches consecutive rows, and the
    remaining right qubits of cell (0, 1) reach the column-0 chains.
    """
    if c.m < 2:
        raise ExtraChainError("plus-one chain needs M >= 2")
    m, l = c.m, c.l
    qubits = set()
    for col in range(1, m):
        for i in range(l):
            qubits.add(c.vertex_index(col - 1, col, LEFT, i))
    for g in range(m - 1):
        for col in range(g + 1, m):
            qubits.add(c.vertex_index(g, col, RIGHT, 0))
    for g in range(m - 2):
        qubits.add(c.vertex_index(g, g + 2, LEFT, 0))
    for i in range(1, l):
        qubits.add(c.vertex_index(0, 1, RIGHT, i))
    return tuple(sorted(qubits))


# -- logical graphs and embeddings -------------------------------------------


def template_canonical_graph(t: Template) -> ProblemGraph:
    """The logical graph the template contracts to, one vertex per chain,
    numbered by partition-major chain order."""
    if t.kind == "bte":
        a, b = t.sizes
        return complete_bipartite(a, b)
    if t.kind == "triad_clique":
        return complete_graph(t.sizes[0])
    if t.kind == "qte":
        s1, s2, s3, s4 = t.sizes
        o2 = s1
        o3 = s1 + s2
        o4 = s1 + s2 + s3
        edges = []
        for i in range(s1):
            for j in range(s2):
                edges.append((i, o2 + j))
        for i in range(s3):
            for j in range(s4):
                edges.append((o3 + i, o4 + j))
        for k in range(s2):
            edges.append((o2 + k, o3 + k))
        return graph_from_edge_list(s1 + s2 + s3 + s4, edges)
    raise UnsupportedKindError(f"unknown template kind {t.kind!r}")


def template_as_embedding(t: Template) -> tuple[ProblemGraph, Embedding]:
    """Template chains as an embedding of the canonical logical graph.

    Supported for bte and triad_clique. For qte the canonical graph is the
    quadripartite minor itself (see template_canonical_graph); asking for
    a two-sided reading of it is a category error, so this raises.
    """
    if t.kind == "qte":
        raise UnsupportedKindError("qte has no two-sided canonical embedding")
    g = template_canonical_graph(t)
    chains = t.all_chains
    emb = Embedding(g.n, t.m, t.m, t.l, chains)
    return g, emb


def verify_template(t: Template) -> VerifyReport:
    """Self-test: chains embed the canonical graph in the template's host."""
    host = t.host()
    if t.kind == "qte":
        g = template_canonical_graph(t)
        emb = Embedding(g.n, host.m, host.n, host.l, t.all_chains)
        return verify(g, host, emb)
    g, emb = template_as_embedding(t)
    return verify(g, host, emb)


# -- JSON form ----------------------------------------------------------------


def template_to_json(t: Template) -> str:
    return json.dumps(
        {
            "kind": t.kind,
            "M": t.m,
            "L": t.l,
            "partitions": [[list(ch) for ch in part] for part in t.partitions],
        }
    )


def template_from_json(text: str) -> Template:
    data = json.loads(text)
    kind = data["kind"]
    if kind not in KINDS:
        raise UnsupportedKindError(f"unknown template kind {kind!r}")
    parts = tuple(
        tuple(tuple(int(q) for q in ch) for ch in part) for part in data["partitions"]
    )
    return Template(kind, int(data["M"]), int(data["L"]), parts)


def save_template(t: Template, path: str | Path) -> None:
    Path(path).write_text(template_to_json(t))


def load_template(path: str | Path) -> Template:
    return template_from_json(Path(path).read_text())
