"""Ground-truth checking of qubit-chain embeddings against Chimera hosts.

An embedding maps each problem-graph vertex to a chain of host qubits. It
is valid when every chain is nonempty and connected in the host, chains are
pairwise disjoint, and every problem edge has at least one host coupler
between the two chains. The verifier is deliberately independent of how
embeddings are produced; it reports every violation it finds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .chimera import ChimeraGraph
from .graphs import ProblemGraph


class OutOfRangeQubitError(ValueError):
    pass


class UnknownVertexError(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    """Chains indexed by problem vertex; a missing vertex has an empty chain."""

    graph_n: int
    m: int
    n: int
    l: int
    chains: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.chains) != self.graph_n:
            raise UnknownVertexError(
                f"{len(self.chains)} chains for {self.graph_n} vertices"
            )

    def chain(self, v: int) -> tuple[int, ...]:
        return self.chains[v]

    @property
    def used_qubits(self) -> int:
        return sum(len(c) for c in self.chains)


def embedding_from_chains(graph_n: int, host: ChimeraGraph, chains) -> Embedding:
    """Build an Embedding from a {vertex: iterable of qubits} mapping."""
    table: list[tuple[int, ...]] = [()] * graph_n
    for v, chain in chains.items():
        v = int(v)
        if not (0 <= v < graph_n):
            raise UnknownVertexError(f"vertex {v} outside 0..{graph_n - 1}")
        table[v] = tuple(sorted(int(q) for q in chain))
    return Embedding(graph_n, host.m, host.n, host.l, tuple(table))


@dataclass(frozen=True)
class Violation:
    kind: str  # empty_chain | overlap | disconnected | missing_edge
    vertices: tuple[int, ...] = ()
    qubits: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.kind == "empty_chain":
            return f"vertex {self.vertices[0]} has an empty chain"
        if self.kind == "overlap":
            return (
                f"qubit {self.qubits[0]} shared by vertices "
                f"{self.vertices[0]} and {self.vertices[1]}"
            )
        if self.kind == "disconnected":
            return f"chain of vertex {self.vertices[0]} is not connected"
        if self.kind == "missing_edge":
            return f"edge {self.vertices} has no coupler between its chains"
        return f"{self.kind} {self.vertices} {self.qubits}"


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violations: tuple[Violation, ...]

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "violations": [
                    {"kind": v.kind, "vertices": list(v.vertices), "qubits": list(v.qubits)}
                    for v in self.violations
                ],
            }
        )

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += ["  " + v.describe() for v in self.violations]
        return "\n".join(lines)


def verify(g: ProblemGraph, host: ChimeraGraph, emb: Embedding) -> VerifyReport:
    """Check emb as a minor embedding of g into host; collects all violations.

    Raises UnknownVertexError / OutOfRangeQubitError for malformed inputs
    (wrong vertex count, host dimension mismatch, qubit ids outside the
    host); structural failures of a well-formed embedding come back as
    violations in the report.
    """
    if emb.graph_n != g.n:
        raise UnknownVertexError(f"embedding has {emb.graph_n} chains, graph has {g.n}")
    if (emb.m, emb.n, emb.l) != (host.m, host.n, host.l):
        raise OutOfRangeQubitError(
            f"embedding built for C_{{{emb.m},{emb.n},{emb.l}}}, "
            f"host is C_{{{host.m},{host.n},{host.l}}}"
        )
    violations: list[Violation] = []

    owner: dict[int, int] = {}
    overlapped = set()
    for v, chain in enumerate(emb.chains):
        if not chain:
            violations.append(Violation("empty_chain", (v,)))
        for q in chain:
            if not (0 <= q < host.num_vertices):
                raise OutOfRangeQubitError(f"qubit {q} outside host (vertex {v})")
            if q in owner and owner[q] != v:
                if (owner[q], v, q) not in overlapped:
                    overlapped.add((owner[q], v, q))
                    violations.append(Violation("overlap", (owner[q], v), (q,)))
            else:
                owner[q] = v

    for v, chain in enumerate(emb.chains):
        if len(chain) > 1 and not _chain_connected(host, chain):
            violations.append(Violation("disconnected", (v,)))

    # coupler coverage: one pass over host edges incident to used qubits
    covered: set[tuple[int, int]] = set()
    for q, v in owner.items():
        for p in host.neighbors(q):
            w = owner.get(p)
            if w is not None and w != v:
                covered.add((v, w) if v < w else (w, v))
    for i, j in g.edges:
        if (i, j) not in covered:
            violations.append(Violation("missing_edge", (i, j)))

    return VerifyReport(not violations, tuple(violations))


def _chain_connected(host: ChimeraGraph, chain: tuple[int, ...]) -> bool:
    members = set(chain)
    seen = {chain[0]}
    stack = [chain[0]]
    while stack:
        q = stack.pop()
        for p in host.neighbors(q):
            if p in members and p not in seen:
                seen.add(p)
                stack.append(p)
    return len(seen) == len(members)


# -- JSON form ----------------------------------------------------------------


def embedding_to_json(emb: Embedding) -> str:
    return json.dumps(
        {
            "graph_n": emb.graph_n,
            "chimera": {"M": emb.m, "N": emb.n, "L": emb.l},
            "chains": {str(v): list(c) for v, c in enumerate(emb.chains)},
        }
    )


def embedding_from_json(text: str) -> Embedding:
    data = json.loads(text)
    dims = data["chimera"]
    host = ChimeraGraph(int(dims["M"]), int(dims["N"]), int(dims["L"]))
    return embedding_from_chains(int(data["graph_n"]), host, data["chains"])


def save_embedding(emb: Embedding, path: str | Path) -> None:
    Path(path).write_text(embedding_to_json(emb))


def load_embedding(path: str | Path) -> Embedding:
    return embedding_from_json(Path(path).read_text())
